#pragma once

// Words over the alphabet {1..d}, homogeneous integer combinations of words
// and the shuffle product.

#include "exact.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sigrank {

/// A word; letters are 1-based.
struct Word {
    std::vector<std::uint32_t> letters;

    Word() = default;
    Word(std::initializer_list<std::uint32_t> l) : letters(l) {}
    explicit Word(std::vector<std::uint32_t> l) : letters(std::move(l)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    Word append(std::uint32_t letter) const {
        Word w = *this;
        w.letters.push_back(letter);
        return w;
    }

    Word concat(const Word& o) const {
        Word w = *this;
        w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
        return w;
    }

    /// Throws unless every letter lies in 1..d.
    void check_alphabet(std::size_t d) const {
        for (auto l : letters)
            if (l < 1 || l > d)
                throw MathError("letter " + std::to_string(l) + " outside alphabet 1.." + std::to_string(d));
    }

    auto operator<=>(const Word&) const = default;
};

/// Digits when every letter is ≤ 9, comma-separated otherwise; the empty word
/// prints as "".
inline std::string to_string(const Word& w) {
    bool digits = true;
    for (auto l : w.letters) digits = digits && l <= 9;
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!digits && i > 0) out += ',';
        out += std::to_string(w.letters[i]);
    }
    return out;
}

/// Parses "1324" (one digit per letter) or "1,3,2,4".
inline Word parse_word(std::string_view text) {
    Word w;
    if (text.empty()) return w;
    if (text.find(',') == std::string_view::npos) {
        for (char ch : text) {
            if (ch < '1' || ch > '9') throw ParseError("invalid letter '" + std::string(1, ch) + "' in word");
            w.letters.push_back(static_cast<std::uint32_t>(ch - '0'));
        }
        return w;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto next = text.find(',', pos);
        if (next == std::string_view::npos) next = text.size();
        auto part = text.substr(pos, next - pos);
        if (part.empty()) throw ParseError("empty letter in word '" + std::string(text) + "'");
        std::uint32_t value = 0;
        for (char ch : part) {
            if (ch < '0' || ch > '9') throw ParseError("invalid letter in word '" + std::string(text) + "'");
            value = value * 10 + static_cast<std::uint32_t>(ch - '0');
        }
        if (value == 0) throw ParseError("letters start at 1");
        w.letters.push_back(value);
        pos = next + 1;
    }
    return w;
}

/// A formal integer combination of words of one common length. Zero
/// coefficients are never stored.
class WordSum {
public:
    WordSum() = default;
    explicit WordSum(const Word& w, std::int64_t coeff = 1) { add(w, coeff); }

    void add(const Word& w, std::int64_t coeff) {
        if (coeff == 0) return;
        if (!terms_.empty() && terms_.begin()->first.size() != w.size())
            throw MathError("WordSum must be homogeneous");
        if (terms_.empty()) length_ = w.size();
        auto& c = terms_[w];
        c += coeff;
        if (c == 0) terms_.erase(w);
    }

    WordSum& operator+=(const WordSum& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }

    /// Appends `letter` to every word.
    WordSum append(std::uint32_t letter) const {
        WordSum out;
        for (const auto& [w, c] : terms_) out.add(w.append(letter), c);
        return out;
    }

    const std::map<Word, std::int64_t>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::optional<std::size_t> length() const {
        if (terms_.empty()) return std::nullopt;
        return length_;
    }

    std::int64_t coefficient(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }

    std::int64_t total_mass() const {
        std::int64_t s = 0;
        for (const auto& [w, c] : terms_) s += c;
        return s;
    }

    friend bool operator==(const WordSum& a, const WordSum& b) { return a.terms_ == b.terms_; }

private:
    std::map<Word, std::int64_t> terms_;
    std::size_t length_ = 0;
};

/// v ⧢ w via (v·i) ⧢ (w·j) = (v ⧢ (w·j))·i + ((v·i) ⧢ w)·j.
inline WordSum shuffle(const Word& v, const Word& w) {
    if (v.empty()) return WordSum(w);
    if (w.empty()) return WordSum(v);
    Word v_head(std::vector<std::uint32_t>(v.letters.begin(), v.letters.end() - 1));
    Word w_head(std::vector<std::uint32_t>(w.letters.begin(), w.letters.end() - 1));
    WordSum out = shuffle(v_head, w).append(v.letters.back());
    out += shuffle(v, w_head).append(w.letters.back());
    return out;
}

inline WordSum shuffle(const WordSum& a, const WordSum& b) {
    WordSum out;
    for (const auto& [v, cv] : a.terms())
        for (const auto& [w, cw] : b.terms()) {
            const WordSum vw = shuffle(v, w);
            for (const auto& [u, cu] : vw.terms()) out.add(u, cv * cw * cu);
        }
    return out;
}

/// All words of length n over {1..d}, in lexicographic order.
inline std::vector<Word> all_words(std::size_t d, std::size_t n) {
    std::vector<Word> out;
    Word w(std::vector<std::uint32_t>(n, 1));
    const std::size_t total = ipow(d, n);
    out.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        out.push_back(w);
        for (std::size_t p = n; p-- > 0;) {
            if (++w.letters[p] <= d) break;
            w.letters[p] = 1;
        }
    }
    return out;
}

}  // namespace sigrank
