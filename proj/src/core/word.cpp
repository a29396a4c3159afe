#include "fractalab/word.hpp"

#include <algorithm>

namespace fractalab {

Word Word::concat(const Word& other) const {
    std::vector<int> out;
    out.reserve(size() + other.size());
    out.insert(out.end(), indices_.begin(), indices_.end());
    out.insert(out.end(), other.indices_.begin(), other.indices_.end());
    return Word(std::move(out));
}

Word Word::parent() const {
    if (indices_.empty()) return {};
    return Word(std::vector<int>(indices_.begin(), indices_.end() - 1));
}

Word Word::shift() const {
    if (indices_.empty()) return {};
    return Word(std::vector<int>(indices_.begin() + 1, indices_.end()));
}

Word Word::prefix(std::size_t n) const {
    n = std::min(n, indices_.size());
    return Word(std::vector<int>(indices_.begin(), indices_.begin() + static_cast<std::ptrdiff_t>(n)));
}

bool Word::is_prefix_of(const Word& other) const {
    return size() <= other.size() && std::equal(indices_.begin(), indices_.end(), other.indices_.begin());
}

std::string Word::to_string() const {
    if (indices_.empty()) return "()";
    std::string out;
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(indices_[i]);
    }
    return out;
}

std::uint64_t Word::rank(int alphabet) const {
    std::uint64_t r = 0;
    for (int i : indices_) r = r * static_cast<std::uint64_t>(alphabet) + static_cast<std::uint64_t>(i - 1);
    return r;
}

Word Word::from_rank(std::uint64_t rank, std::size_t length, int alphabet) {
    std::vector<int> idx(length);
    for (std::size_t j = length; j-- > 0;) {
        idx[j] = static_cast<int>(rank % static_cast<std::uint64_t>(alphabet)) + 1;
        rank /= static_cast<std::uint64_t>(alphabet);
    }
    return Word(std::move(idx));
}

}  // namespace fractalab
