#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace attractorlab {

/// One letter of a group word: a generator index raised to +1 or -1.
struct Letter {
    std::uint32_t generator = 0;
    std::int8_t sign = 1;

    Letter inverse() const { return {generator, static_cast<std::int8_t>(-sign)}; }
    bool cancels(const Letter& other) const { return generator == other.generator && sign == -other.sign; }

    /// Position in the alphabet g0 < g0^-1 < g1 < g1^-1 < ...
    std::uint32_t code() const { return 2 * generator + (sign < 0 ? 1u : 0u); }
    static Letter from_code(std::uint32_t code) {
        return {code / 2, static_cast<std::int8_t>(code % 2 == 0 ? 1 : -1)};
    }

    friend bool operator==(const Letter&, const Letter&) = default;
    friend auto operator<=>(const Letter& a, const Letter& b) { return a.code() <=> b.code(); }
};

/// A freely reduced word. The constructor reduces its input, so a Word never
/// contains an adjacent pair x x^-1. Reading order is composition order:
/// the word a b evaluates to the map a o b.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters);

    static Word letter(std::uint32_t generator, int sign = 1);

    std::span<const Letter> letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse() const;
    /// Reduced product; the result evaluates to eval(*this) o eval(rhs).
    Word operator*(const Word& rhs) const;
    /// Prepends one letter with cancellation.
    Word prepended(Letter l) const;
    Word power(int n) const;

    /// Rendered as dot-separated names, inverses as name^-1; empty word is "".
    std::string to_string(std::span<const std::string> names) const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

/// Shortest-then-lexicographic order on words (the tie-break used everywhere).
bool shortlex_less(const Word& a, const Word& b);

/// Free reduction of an arbitrary letter sequence.
std::vector<Letter> freely_reduce(std::span<const Letter> letters);

/// All freely reduced words of length <= max_len over `rank` generators,
/// in shortlex order. Throws BudgetExceeded when the count would pass `cap`.
std::vector<Word> enumerate_reduced_words(std::size_t rank, std::size_t max_len, std::size_t cap = 10'000'000);

/// 1 + sum_{k=1..L} 2r(2r-1)^(k-1), saturating at SIZE_MAX.
std::size_t reduced_ball_size(std::size_t rank, std::size_t max_len);

}  // namespace attractorlab
