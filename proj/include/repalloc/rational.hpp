#ifndef REPALLOC_RATIONAL_HPP
#define REPALLOC_RATIONAL_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace repalloc {

namespace detail {
__extension__ typedef __int128 WideInt;
}

/// Exact rational number over 64-bit integers.
///
/// Always kept in lowest terms with a positive denominator. Arithmetic is
/// carried out in 128-bit intermediates and throws std::overflow_error when a
/// normalized result no longer fits.
class Rational {
public:
	constexpr Rational() noexcept = default;
	Rational(std::int64_t numerator) noexcept : num_(numerator) {}
	Rational(std::int64_t numerator, std::int64_t denominator);

	std::int64_t numerator() const noexcept { return num_; }
	std::int64_t denominator() const noexcept { return den_; }

	bool is_zero() const noexcept { return num_ == 0; }
	bool is_integer() const noexcept { return den_ == 1; }

	/// Largest integer <= value.
	std::int64_t floor() const noexcept;
	/// Smallest integer >= value.
	std::int64_t ceil() const noexcept;

	/// Parses "12", "-0.05", "3/20". Exponents and whitespace are rejected.
	static Rational parse(std::string_view text);

	/// Decimal form when the expansion terminates ("0.05"), else "p/q".
	std::string to_string() const;

	Rational operator-() const;
	Rational& operator+=(const Rational& rhs);
	Rational& operator-=(const Rational& rhs);
	Rational& operator*=(const Rational& rhs);
	Rational& operator/=(const Rational& rhs);

	friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
	friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
	friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
	friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

	friend bool operator==(const Rational&, const Rational&) noexcept = default;
	friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept;

private:
	static Rational from_wide(detail::WideInt numerator, detail::WideInt denominator);

	std::int64_t num_ = 0;
	std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

struct RationalHash {
	std::size_t operator()(const Rational& value) const noexcept;
};

struct RationalVectorHash {
	std::size_t operator()(const std::vector<Rational>& values) const noexcept;
};

} // namespace repalloc

#endif
