#pragma once

#include <numeric>
#include <string>

#include "ratseq/numeric.hpp"

namespace ratseq {

/// A rational base p/q: two coprime integers with p > q > 1. The digit
/// alphabet is A_p = {0, ..., p-1}.
struct RationalBase {
    long long p = 3;
    long long q = 2;

    RationalBase(long long p_, long long q_) : p(p_), q(q_) {
        if (!(p > q && q > 1))
            throw Error("rational base: need p > q > 1, got " + std::to_string(p) + "/" +
                        std::to_string(q));
        if (std::gcd(p, q) != 1)
            throw Error("rational base: p and q must be coprime, got " + std::to_string(p) +
                        "/" + std::to_string(q));
    }

    int alphabet_size() const { return static_cast<int>(p); }

    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

    friend bool operator==(const RationalBase& a, const RationalBase& b) {
        return a.p == b.p && a.q == b.q;
    }
};

inline RationalBase base_from_text(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 == text.size())
        throw Error("rational base: expected \"p/q\", got '" + text + "'");
    try {
        long long p = std::stoll(text.substr(0, slash));
        long long q = std::stoll(text.substr(slash + 1));
        return RationalBase(p, q);
    } catch (const std::invalid_argument&) {
        throw Error("rational base: expected \"p/q\", got '" + text + "'");
    } catch (const std::out_of_range&) {
        throw Error("rational base: value out of range in '" + text + "'");
    }
}

}  // namespace ratseq
