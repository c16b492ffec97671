#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "partid/errors.hpp"
#include "partid/rng.hpp"

namespace partid {

/* Inclusion probability for seeded random sets, kept as an exact rational
 * so that materialization never depends on floating point. */
struct density_ratio {
    std::uint64_t num = 1;
    std::uint64_t den = 2;

    void normalize() {
        if (den == 0 || num == 0 || num > den)
            throw bad_params("density must be a rational in (0,1]");
        const std::uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    bool operator==(const density_ratio&) const = default;
};

inline density_ratio parse_density(std::string_view s) {
    density_ratio d;
    const auto slash = s.find('/');
    try {
        if (slash != std::string_view::npos) {
            d.num = std::stoull(std::string(s.substr(0, slash)));
            d.den = std::stoull(std::string(s.substr(slash + 1)));
        } else if (s.find('.') != std::string_view::npos) {
            // decimal form: scale by a power of ten
            const auto dot = s.find('.');
            const std::string whole(s.substr(0, dot)), frac(s.substr(dot + 1));
            d.den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                d.den *= 10;
            d.num = (whole.empty() ? 0 : std::stoull(whole)) * d.den +
                    (frac.empty() ? 0 : std::stoull(frac));
        } else {
            d.num = std::stoull(std::string(s));
            d.den = 1;
        }
    } catch (const std::exception&) {
        throw bad_params("bad density: " + std::string(s));
    }
    d.normalize();
    return d;
}

/* A set of admissible parts: a strictly increasing set of positive integers,
 * possibly infinite. Partitions draw their parts from here. Only elements
 * <= n can occur in a partition of n, so every query truncates the set at
 * its target first; that is what keeps the infinite kinds computable. */
class base_set {
  public:
    enum class kind { primes, squares, odds, naturals, explicit_list, seeded_random };

    static base_set primes() { return base_set(kind::primes); }
    static base_set squares() { return base_set(kind::squares); }
    static base_set odds() { return base_set(kind::odds); }
    static base_set naturals() { return base_set(kind::naturals); }

    static base_set explicit_set(std::vector<std::uint64_t> parts) {
        base_set b(kind::explicit_list);
        std::sort(parts.begin(), parts.end());
        parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
        if (!parts.empty() && parts.front() == 0)
            throw bad_params("parts must be positive");
        b.elements_ = std::move(parts);
        return b;
    }

    /* Include k in [1, max_element] iff the k-th splitmix64 draw, read as a
     * 64-bit fraction, falls below num/den. Same (seed, density, max) gives
     * the same set everywhere, every time. */
    static base_set seeded_random(std::uint64_t seed, density_ratio density,
                                  std::uint64_t max_element) {
        density.normalize();
        if (max_element == 0)
            throw bad_params("max_element must be positive");
        base_set b(kind::seeded_random);
        b.seed_ = seed;
        b.density_ = density;
        b.max_element_ = max_element;
        splitmix64 g(seed);
        const unsigned __int128 threshold =
            static_cast<unsigned __int128>(density.num) << 64;
        for (std::uint64_t k = 1; k <= max_element; ++k) {
            const std::uint64_t draw = g.next();
            if (static_cast<unsigned __int128>(draw) * density.den < threshold)
                b.elements_.push_back(k);
        }
        return b;
    }

    /* Accepts: primes | squares | odds | naturals | explicit:1,4,9
     * | random:seed=42,density=1/2,max=200 */
    static base_set parse(std::string_view spec) {
        if (spec == "primes") return primes();
        if (spec == "squares") return squares();
        if (spec == "odds") return odds();
        if (spec == "naturals") return naturals();
        if (spec.rfind("explicit:", 0) == 0) {
            std::vector<std::uint64_t> parts;
            std::stringstream ss{std::string(spec.substr(9))};
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (!tok.empty())
                    parts.push_back(parse_u64(tok));
            return explicit_set(std::move(parts));
        }
        if (spec.rfind("random:", 0) == 0) {
            std::uint64_t seed = 0, max_element = 0;
            density_ratio density;
            bool have_max = false;
            std::stringstream ss{std::string(spec.substr(7))};
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos)
                    throw bad_params("bad base set spec: " + std::string(spec));
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "seed") seed = parse_u64(val);
                else if (key == "density") density = parse_density(val);
                else if (key == "max") { max_element = parse_u64(val); have_max = true; }
                else throw bad_params("unknown base set field: " + key);
            }
            if (!have_max)
                throw bad_params("random base set needs max=");
            return seeded_random(seed, density, max_element);
        }
        throw bad_params("unknown base set: " + std::string(spec));
    }

    /* Canonical spec string; doubles as the set's fingerprint. */
    std::string config_string() const {
        switch (kind_) {
            case kind::primes: return "primes";
            case kind::squares: return "squares";
            case kind::odds: return "odds";
            case kind::naturals: return "naturals";
            case kind::explicit_list: {
                std::string out = "explicit:";
                for (std::size_t i = 0; i < elements_.size(); ++i) {
                    if (i) out += ',';
                    out += std::to_string(elements_[i]);
                }
                return out;
            }
            case kind::seeded_random: {
                std::string out = "random:seed=" + std::to_string(seed_);
                out += ",density=" + std::to_string(density_.num) + "/" +
                       std::to_string(density_.den);
                out += ",max=" + std::to_string(max_element_);
                return out;
            }
        }
        return {};
    }

    kind type() const { return kind_; }

    /* All elements <= limit, ascending. */
    std::vector<std::uint64_t> parts_up_to(std::uint64_t limit) const {
        std::vector<std::uint64_t> out;
        switch (kind_) {
            case kind::primes: {
                if (limit < 2) return out;
                std::vector<bool> composite(limit + 1, false);
                for (std::uint64_t p = 2; p <= limit; ++p) {
                    if (composite[p]) continue;
                    out.push_back(p);
                    for (std::uint64_t m = p * p; m <= limit; m += p)
                        composite[m] = true;
                }
                return out;
            }
            case kind::squares:
                for (std::uint64_t k = 1; k * k <= limit; ++k)
                    out.push_back(k * k);
                return out;
            case kind::odds:
                for (std::uint64_t k = 1; k <= limit; k += 2)
                    out.push_back(k);
                return out;
            case kind::naturals:
                for (std::uint64_t k = 1; k <= limit; ++k)
                    out.push_back(k);
                return out;
            case kind::explicit_list:
            case kind::seeded_random: {
                const auto end = std::upper_bound(elements_.begin(), elements_.end(), limit);
                out.assign(elements_.begin(), end);
                return out;
            }
        }
        return out;
    }

    bool operator==(const base_set& other) const {
        return config_string() == other.config_string();
    }

  private:
    explicit base_set(kind k) : kind_(k) {}

    static std::uint64_t parse_u64(const std::string& s) {
        try {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(s, &pos);
            if (pos != s.size())
                throw bad_params("bad integer: " + s);
            return v;
        } catch (const std::invalid_argument&) {
            throw bad_params("bad integer: " + s);
        } catch (const std::out_of_range&) {
            throw bad_params("integer out of range: " + s);
        }
    }

    kind kind_;
    std::vector<std::uint64_t> elements_; // explicit or materialized random
    std::uint64_t seed_ = 0;
    density_ratio density_{1, 1};
    std::uint64_t max_element_ = 0;
};

} // namespace partid
