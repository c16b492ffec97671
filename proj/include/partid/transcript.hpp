#pragma once

#include <json.hpp>

#include <cstddef>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "partid/errors.hpp"

namespace partid {

using json = nlohmann::json;

/* One published message on the bulletin board. */
struct transcript_message {
    std::size_t seq;
    std::string role;
    std::string kind;
    json payload;

    json to_json() const {
        return json{{"seq", seq}, {"role", role}, {"kind", kind}, {"payload", payload}};
    }
};

/* Append-only log of everything a session publishes. Serialized as one
 * JSON record per line; parsing the lines back reproduces the log, so a
 * verdict can always be recomputed from the file alone. */
class transcript {
  public:
    const transcript_message& append(std::string role, std::string kind, json payload) {
        log_.push_back(transcript_message{log_.size(), std::move(role), std::move(kind),
                                          std::move(payload)});
        return log_.back();
    }

    std::span<const transcript_message> messages() const { return log_; }

    std::size_t size() const { return log_.size(); }

    const transcript_message* find_first(std::string_view kind) const {
        for (const transcript_message& m : log_)
            if (m.kind == kind)
                return &m;
        return nullptr;
    }

    /* All messages of one kind, in publication order. */
    std::vector<const transcript_message*> all_of(std::string_view kind) const {
        std::vector<const transcript_message*> out;
        for (const transcript_message& m : log_)
            if (m.kind == kind)
                out.push_back(&m);
        return out;
    }

    std::string to_jsonl() const {
        std::string out;
        for (const transcript_message& m : log_) {
            out += m.to_json().dump();
            out += '\n';
        }
        return out;
    }

    static transcript from_jsonl(std::string_view text) {
        transcript t;
        std::istringstream is{std::string(text)};
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty())
                continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::parse_error& e) {
                throw parse_error(std::string("bad transcript line: ") + e.what());
            }
            transcript_message m{j.at("seq").get<std::size_t>(), j.at("role").get<std::string>(),
                                 j.at("kind").get<std::string>(), j.at("payload")};
            if (m.seq != t.log_.size())
                throw parse_error("transcript sequence gap at " + std::to_string(m.seq));
            t.log_.push_back(std::move(m));
        }
        return t;
    }

  private:
    std::vector<transcript_message> log_;
};

} // namespace partid
