#pragma once

#include <openssl/evp.h>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "partid/bigint.hpp"
#include "partid/errors.hpp"

namespace partid {

/* Hash of an integer vector, used by the vote inspection table. The byte
 * encoding must be injective on vectors of (possibly negative) integers and
 * identical on every platform:
 *   per entry: sign byte (0x00 / 0x01), 4-byte big-endian magnitude length,
 *   magnitude bytes big-endian (empty for zero), then delimiter 0xff. */
struct hash_spec {
    std::string algorithm = "sha256";

    static std::vector<unsigned char> encode(std::span<const big_count> values) {
        std::vector<unsigned char> out;
        for (const big_count& v : values) {
            out.push_back(sgn(v) < 0 ? 0x01 : 0x00);
            const big_count mag = abs(v);
            std::vector<unsigned char> bytes;
            if (mag != 0) {
                bytes.resize((mpz_sizeinbase(mag.get_mpz_t(), 2) + 7) / 8);
                std::size_t written = 0;
                mpz_export(bytes.data(), &written, 1, 1, 1, 0, mag.get_mpz_t());
                bytes.resize(written);
            }
            const std::uint32_t len = static_cast<std::uint32_t>(bytes.size());
            out.push_back(static_cast<unsigned char>(len >> 24));
            out.push_back(static_cast<unsigned char>(len >> 16));
            out.push_back(static_cast<unsigned char>(len >> 8));
            out.push_back(static_cast<unsigned char>(len));
            out.insert(out.end(), bytes.begin(), bytes.end());
            out.push_back(0xff);
        }
        return out;
    }

    std::string digest_hex(std::span<const big_count> values) const {
        const EVP_MD* md = EVP_get_digestbyname(algorithm.c_str());
        if (md == nullptr)
            throw bad_params("unknown hash algorithm: " + algorithm);
        const std::vector<unsigned char> bytes = encode(values);
        unsigned char out[EVP_MAX_MD_SIZE];
        unsigned int out_len = 0;
        if (EVP_Digest(bytes.data(), bytes.size(), out, &out_len, md, nullptr) != 1)
            throw scheme_error("digest failed");
        static const char* hex = "0123456789abcdef";
        std::string s;
        s.reserve(2 * out_len);
        for (unsigned int i = 0; i < out_len; ++i) {
            s += hex[out[i] >> 4];
            s += hex[out[i] & 0x0f];
        }
        return s;
    }
};

} // namespace partid
