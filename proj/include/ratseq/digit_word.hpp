#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "ratseq/numeric.hpp"

namespace ratseq {

/// A finite word of non-negative integer digits, most significant digit
/// first. `alphabet_bound` is the exclusive upper bound on the digits: words
/// over A_p carry bound p, while digit-conversion inputs may use a larger
/// bound. Words compare by digits only; the bound is metadata.
class DigitWord {
public:
    DigitWord() = default;

    explicit DigitWord(std::vector<int> digits, int alphabet_bound = 0)
        : digits_(std::move(digits)) {
        int max_digit = -1;
        for (int d : digits_) {
            if (d < 0) throw Error("digit word: negative digit " + std::to_string(d));
            max_digit = std::max(max_digit, d);
        }
        bound_ = alphabet_bound > 0 ? alphabet_bound : max_digit + 1;
        if (bound_ < 1) bound_ = 1;
        if (max_digit >= bound_)
            throw Error("digit word: digit " + std::to_string(max_digit) +
                        " exceeds alphabet bound " + std::to_string(bound_));
    }

    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    int operator[](std::size_t i) const { return digits_[i]; }
    const std::vector<int>& digits() const { return digits_; }
    int alphabet_bound() const { return bound_; }

    auto begin() const { return digits_.begin(); }
    auto end() const { return digits_.end(); }

    bool has_leading_zero() const { return !digits_.empty() && digits_.front() == 0; }

    DigitWord reversed() const {
        std::vector<int> r(digits_.rbegin(), digits_.rend());
        return DigitWord(std::move(r), bound_);
    }

    DigitWord appended(int digit) const {
        std::vector<int> d = digits_;
        d.push_back(digit);
        return DigitWord(std::move(d), std::max(bound_, digit + 1));
    }

    friend bool operator==(const DigitWord& a, const DigitWord& b) {
        return a.digits_ == b.digits_;
    }
    friend bool operator!=(const DigitWord& a, const DigitWord& b) { return !(a == b); }

private:
    std::vector<int> digits_;
    int bound_ = 1;
};

/// Radix order: shorter words first, then lexicographic.
inline bool radix_less(const DigitWord& a, const DigitWord& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool radix_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// Text format: digits juxtaposed ("2122") unless some digit is >= 10, in
/// which case tokens are dot-separated ("2.6.10"). The empty word is "e".
inline std::string to_text(const DigitWord& w) {
    if (w.empty()) return "e";
    bool dotted = std::any_of(w.begin(), w.end(), [](int d) { return d >= 10; });
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (dotted && i > 0) s += '.';
        s += std::to_string(w[i]);
    }
    return s;
}

inline DigitWord word_from_text(const std::string& text, int alphabet_bound = 0) {
    if (text.empty()) throw Error("digit word: empty text (use \"e\" for the empty word)");
    if (text == "e") return DigitWord({}, alphabet_bound);
    std::vector<int> digits;
    if (text.find('.') != std::string::npos) {
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t dot = text.find('.', pos);
            std::string tok = text.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
            if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
                throw Error("digit word: bad token '" + tok + "' in '" + text + "'");
            digits.push_back(std::stoi(tok));
            if (dot == std::string::npos) break;
            pos = dot + 1;
        }
    } else {
        for (char c : text) {
            if (c < '0' || c > '9')
                throw Error("digit word: bad character '" + std::string(1, c) + "' in '" + text + "'");
            digits.push_back(c - '0');
        }
    }
    return DigitWord(std::move(digits), alphabet_bound);
}

}  // namespace ratseq
