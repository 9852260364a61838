#include "repalloc/rational.hpp"

#include <limits>
#include <numeric>
#include <ostream>

namespace repalloc {

namespace {

using detail::WideInt;

WideInt gcd_wide(WideInt a, WideInt b)
{
	if (a < 0)
		a = -a;
	if (b < 0)
		b = -b;
	while (b != 0) {
		WideInt t = a % b;
		a = b;
		b = t;
	}
	return a;
}

bool fits(WideInt v)
{
	return v >= std::numeric_limits<std::int64_t>::min() &&
	       v <= std::numeric_limits<std::int64_t>::max();
}

std::invalid_argument bad_number(std::string_view text)
{
	return std::invalid_argument("not an exact number: \"" + std::string(text) + "\"");
}

std::int64_t parse_digits(std::string_view digits, std::string_view whole)
{
	if (digits.empty())
		throw bad_number(whole);
	WideInt acc = 0;
	for (char c : digits) {
		if (c < '0' || c > '9')
			throw bad_number(whole);
		acc = acc * 10 + (c - '0');
		if (!fits(acc))
			throw std::overflow_error("number too large: " + std::string(whole));
	}
	return static_cast<std::int64_t>(acc);
}

} // namespace

Rational::Rational(std::int64_t numerator, std::int64_t denominator)
{
	if (denominator == 0)
		throw std::domain_error("rational with zero denominator");
	*this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(WideInt numerator, WideInt denominator)
{
	if (denominator == 0)
		throw std::domain_error("division by zero");
	if (denominator < 0) {
		numerator = -numerator;
		denominator = -denominator;
	}
	WideInt g = gcd_wide(numerator, denominator);
	if (g > 1) {
		numerator /= g;
		denominator /= g;
	}
	if (!fits(numerator) || !fits(denominator))
		throw std::overflow_error("rational overflow");
	Rational r;
	r.num_ = static_cast<std::int64_t>(numerator);
	r.den_ = static_cast<std::int64_t>(denominator);
	return r;
}

std::int64_t Rational::floor() const noexcept
{
	std::int64_t q = num_ / den_;
	if (num_ % den_ != 0 && num_ < 0)
		--q;
	return q;
}

std::int64_t Rational::ceil() const noexcept
{
	std::int64_t q = num_ / den_;
	if (num_ % den_ != 0 && num_ > 0)
		++q;
	return q;
}

Rational Rational::parse(std::string_view text)
{
	std::string_view body = text;
	bool negative = false;
	if (!body.empty() && body.front() == '-') {
		negative = true;
		body.remove_prefix(1);
	}
	if (body.empty())
		throw bad_number(text);

	Rational out;
	if (auto slash = body.find('/'); slash != std::string_view::npos) {
		std::int64_t p = parse_digits(body.substr(0, slash), text);
		std::int64_t q = parse_digits(body.substr(slash + 1), text);
		if (q == 0)
			throw bad_number(text);
		out = Rational(p, q);
	} else if (auto dot = body.find('.'); dot != std::string_view::npos) {
		std::string_view int_part = body.substr(0, dot);
		std::string_view frac_part = body.substr(dot + 1);
		if (frac_part.empty() || frac_part.size() > 18)
			throw bad_number(text);
		std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
		std::int64_t frac = parse_digits(frac_part, text);
		std::int64_t scale = 1;
		for (std::size_t i = 0; i < frac_part.size(); ++i)
			scale *= 10;
		out = from_wide(static_cast<WideInt>(whole) * scale + frac, scale);
	} else {
		out = Rational(parse_digits(body, text));
	}
	return negative ? -out : out;
}

std::string Rational::to_string() const
{
	// terminating decimal iff the reduced denominator is 2^a 5^b
	std::int64_t d = den_;
	int twos = 0, fives = 0;
	while (d % 2 == 0) {
		d /= 2;
		++twos;
	}
	while (d % 5 == 0) {
		d /= 5;
		++fives;
	}
	if (d != 1)
		return std::to_string(num_) + "/" + std::to_string(den_);
	if (den_ == 1)
		return std::to_string(num_);

	int digits = std::max(twos, fives);
	WideInt scaled = static_cast<WideInt>(num_ < 0 ? -static_cast<WideInt>(num_) : num_);
	WideInt scale = 1;
	for (int i = 0; i < digits; ++i)
		scale *= 10;
	scaled = scaled * (scale / den_);
	WideInt whole = scaled / scale;
	WideInt frac = scaled % scale;

	std::string frac_text;
	for (int i = 0; i < digits; ++i) {
		frac_text.insert(frac_text.begin(), static_cast<char>('0' + static_cast<int>(frac % 10)));
		frac /= 10;
	}
	while (!frac_text.empty() && frac_text.back() == '0')
		frac_text.pop_back();
	std::string out = num_ < 0 ? "-" : "";
	out += std::to_string(static_cast<std::int64_t>(whole));
	out += ".";
	out += frac_text;
	return out;
}

Rational Rational::operator-() const
{
	return from_wide(-static_cast<WideInt>(num_), den_);
}

Rational& Rational::operator+=(const Rational& rhs)
{
	*this = from_wide(static_cast<WideInt>(num_) * rhs.den_ + static_cast<WideInt>(rhs.num_) * den_,
	                  static_cast<WideInt>(den_) * rhs.den_);
	return *this;
}

Rational& Rational::operator-=(const Rational& rhs)
{
	*this = from_wide(static_cast<WideInt>(num_) * rhs.den_ - static_cast<WideInt>(rhs.num_) * den_,
	                  static_cast<WideInt>(den_) * rhs.den_);
	return *this;
}

Rational& Rational::operator*=(const Rational& rhs)
{
	*this = from_wide(static_cast<WideInt>(num_) * rhs.num_, static_cast<WideInt>(den_) * rhs.den_);
	return *this;
}

Rational& Rational::operator/=(const Rational& rhs)
{
	if (rhs.num_ == 0)
		throw std::domain_error("division by zero");
	*this = from_wide(static_cast<WideInt>(num_) * rhs.den_, static_cast<WideInt>(den_) * rhs.num_);
	return *this;
}

std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs) noexcept
{
	WideInt l = static_cast<WideInt>(lhs.num_) * rhs.den_;
	WideInt r = static_cast<WideInt>(rhs.num_) * lhs.den_;
	if (l < r)
		return std::strong_ordering::less;
	if (l > r)
		return std::strong_ordering::greater;
	return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Rational& value)
{
	return os << value.to_string();
}

Rational min(const Rational& a, const Rational& b)
{
	return b < a ? b : a;
}

Rational max(const Rational& a, const Rational& b)
{
	return a < b ? b : a;
}

std::size_t RationalHash::operator()(const Rational& value) const noexcept
{
	std::size_t h = std::hash<std::int64_t>{}(value.numerator());
	h ^= std::hash<std::int64_t>{}(value.denominator()) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
	return h;
}

std::size_t RationalVectorHash::operator()(const std::vector<Rational>& values) const noexcept
{
	std::size_t h = values.size();
	RationalHash one;
	for (const auto& v : values)
		h ^= one(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
	return h;
}

} // namespace repalloc
