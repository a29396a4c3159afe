#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fractalab {

/// Finite index string over {1..m}. The empty word is the identity.
///
/// Indices are 1-based. Range checking against a particular system happens
/// when the word is used with that system, not here.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> indices) : indices_(indices) {}
    explicit Word(std::vector<int> indices) : indices_(std::move(indices)) {}

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }
    int operator[](std::size_t i) const { return indices_[i]; }
    std::span<const int> indices() const noexcept { return indices_; }

    void push_back(int i) { indices_.push_back(i); }
    void pop_back() { indices_.pop_back(); }

    /// Concatenation `*this` followed by `other`.
    Word concat(const Word& other) const;
    /// Drops the last index.
    Word parent() const;
    /// Drops the first index.
    Word shift() const;
    Word prefix(std::size_t n) const;
    bool is_prefix_of(const Word& other) const;

    /// Dot-separated, e.g. "1.2.2"; the empty word prints as "()".
    std::string to_string() const;

    /// Lexicographic on indices, shorter prefix first.
    auto operator<=>(const Word&) const = default;

    /// Mixed-radix rank among words of the same length, with index 1 as digit 0.
    std::uint64_t rank(int alphabet) const;
    static Word from_rank(std::uint64_t rank, std::size_t length, int alphabet);

private:
    std::vector<int> indices_;
};

}  // namespace fractalab
