#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeldp {

/// One generator a_i of the order-2 free factors; 1-based index, each letter
/// is its own inverse.
struct Letter {
    int index = 1;

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A reduced word over {a_1, ..., a_d}: no letter adjacent to itself. The
/// empty word is the group identity. Words identify vertices of the tree;
/// length() is the graph distance to the root.
class ReducedWord {
public:
    ReducedWord() = default;

    /// Builds from an already reduced letter sequence; rejects unreduced input.
    explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
        for (std::size_t i = 1; i < letters_.size(); ++i) {
            if (letters_[i] == letters_[i - 1])
                throw std::invalid_argument("ReducedWord: adjacent equal letters");
        }
    }

    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    const Letter& operator[](std::size_t i) const { return letters_[i]; }
    const Letter& first() const { return letters_.front(); }
    const Letter& last() const { return letters_.back(); }
    const std::vector<Letter>& letters() const { return letters_; }

    /// Right-multiplication by a generator: cancel if it repeats the last
    /// letter, append otherwise. Keeps the word reduced.
    void push(Letter s) {
        if (!letters_.empty() && letters_.back() == s) {
            letters_.pop_back();
        } else {
            letters_.push_back(s);
        }
    }

    /// Inverse word: letters reversed (generators are involutions).
    ReducedWord inverse() const {
        std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
        ReducedWord w;
        w.letters_ = std::move(rev);
        return w;
    }

    /// Subword of `len` letters starting at `from` (still reduced).
    ReducedWord subword(std::size_t from, std::size_t len) const {
        ReducedWord w;
        w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(from),
                          letters_.begin() + static_cast<std::ptrdiff_t>(from + len));
        return w;
    }

    bool is_prefix_of(const ReducedWord& other) const {
        if (length() > other.length()) return false;
        return std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
    }

    std::string str() const {
        if (letters_.empty()) return "e";
        std::string s;
        for (const Letter& l : letters_) {
            s += 'a';
            s += std::to_string(l.index);
        }
        return s;
    }

    friend bool operator==(const ReducedWord& a, const ReducedWord& b) {
        return a.letters_ == b.letters_;
    }

private:
    std::vector<Letter> letters_;
};

/// Group multiplication by one generator: concatenation followed by reduction.
inline ReducedWord reduce_concat(ReducedWord w, Letter s) {
    w.push(s);
    return w;
}

/// Full product of two reduced words (reduction may telescope).
inline ReducedWord reduce_product(ReducedWord lhs, const ReducedWord& rhs) {
    for (const Letter& l : rhs.letters()) lhs.push(l);
    return lhs;
}

/// Most recent common ancestor in the tree = longest common prefix.
inline ReducedWord meet(const ReducedWord& u, const ReducedWord& v) {
    std::size_t m = std::min(u.length(), v.length());
    std::size_t k = 0;
    while (k < m && u[k] == v[k]) ++k;
    return u.subword(0, k);
}

}  // namespace treeldp
