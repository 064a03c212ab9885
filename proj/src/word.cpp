#include "attractorlab/word.hpp"

#include <algorithm>
#include <limits>

#include "attractorlab/error.hpp"

namespace attractorlab {

std::vector<Letter> freely_reduce(std::span<const Letter> letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (const Letter& l : letters) {
        if (l.sign != 1 && l.sign != -1) throw InvalidArgument("letter sign must be +1 or -1");
        if (!out.empty() && out.back().cancels(l))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word::Word(std::vector<Letter> letters) : letters_(freely_reduce(letters)) {}

Word Word::letter(std::uint32_t generator, int sign) {
    Word w;
    w.letters_.push_back({generator, static_cast<std::int8_t>(sign < 0 ? -1 : 1)});
    return w;
}

Word Word::inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
}

Word Word::operator*(const Word& rhs) const {
    std::vector<Letter> joined = letters_;
    joined.insert(joined.end(), rhs.letters_.begin(), rhs.letters_.end());
    return Word(std::move(joined));
}

Word Word::prepended(Letter l) const {
    Word w;
    if (!letters_.empty() && letters_.front().cancels(l)) {
        w.letters_.assign(letters_.begin() + 1, letters_.end());
    } else {
        w.letters_.reserve(letters_.size() + 1);
        w.letters_.push_back(l);
        w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end());
    }
    return w;
}

Word Word::power(int n) const {
    const Word base = n < 0 ? inverse() : *this;
    std::vector<Letter> out;
    for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
    return Word(std::move(out));
}

std::string Word::to_string(std::span<const std::string> names) const {
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += '.';
        const Letter& l = letters_[i];
        if (l.generator < names.size())
            out += names[l.generator];
        else
            out += "g" + std::to_string(l.generator);
        if (l.sign < 0) out += "^-1";
    }
    return out;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    const auto la = a.letters(), lb = b.letters();
    return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
}

std::size_t reduced_ball_size(std::size_t rank, std::size_t max_len) {
    constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
    if (rank == 0) return 1;
    std::size_t total = 1;
    std::size_t layer = 2 * rank;
    for (std::size_t k = 1; k <= max_len; ++k) {
        if (total > kMax - layer) return kMax;
        total += layer;
        const std::size_t branching = 2 * rank - 1;
        layer = layer > kMax / branching ? kMax : layer * branching;
    }
    return total;
}

std::vector<Word> enumerate_reduced_words(std::size_t rank, std::size_t max_len, std::size_t cap) {
    if (rank == 0) throw InvalidArgument("enumerate_reduced_words: rank must be >= 1");
    const std::size_t expected = reduced_ball_size(rank, max_len);
    if (expected > cap) throw BudgetExceeded("enumerate_reduced_words: " + std::to_string(expected) + " words exceed cap");

    std::vector<Word> out;
    out.reserve(expected);
    out.emplace_back();
    std::vector<std::vector<Letter>> layer{{}};
    const auto alphabet = static_cast<std::uint32_t>(2 * rank);
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::vector<Letter>> next;
        next.reserve(layer.size() * (2 * rank - 1) + 1);
        // Extending on the right keeps shortlex order when the previous layer is sorted.
        for (const auto& prefix : layer)
            for (std::uint32_t c = 0; c < alphabet; ++c) {
                const Letter l = Letter::from_code(c);
                if (!prefix.empty() && prefix.back().cancels(l)) continue;
                auto w = prefix;
                w.push_back(l);
                next.push_back(std::move(w));
            }
        for (const auto& w : next) out.emplace_back(w);
        layer = std::move(next);
    }
    return out;
}

}  // namespace attractorlab
