#include "valring/ring.hpp"

#include "valring/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <regex>

namespace valring {

namespace {

constexpr std::uint64_t kHardOrderLimit = std::uint64_t{1} << 31;
constexpr std::uint64_t kFieldTableLimit = 1024;
constexpr std::uint64_t kRingTableLimit = 1024;

std::uint64_t checked_pow(std::uint64_t base, unsigned exp, std::uint64_t limit, const char *what)
{
	std::uint64_t acc = 1;
	for (unsigned i = 0; i < exp; ++i)
	{
		if (acc > limit / base)
			throw CapacityError(std::string(what) + " exceeds size cap " + std::to_string(limit));
		acc *= base;
	}
	return acc;
}

// Polynomials over F_p, constant term first, trailing zeros trimmed.
using Poly = std::vector<std::uint32_t>;

void trim(Poly &f)
{
	while (!f.empty() && f.back() == 0)
		f.pop_back();
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p)
{
	// Fermat; p is prime and small.
	std::uint64_t result = 1, base = a % p, e = p - 2;
	while (e)
	{
		if (e & 1)
			result = result * base % p;
		base = base * base % p;
		e >>= 1;
	}
	return result;
}

// Remainder of f modulo monic g.
Poly poly_mod(Poly f, const Poly &g, std::uint64_t p)
{
	trim(f);
	const std::size_t dg = g.size() - 1;
	while (f.size() > dg)
	{
		const std::uint64_t lead = f.back();
		const std::size_t shift = f.size() - 1 - dg;
		for (std::size_t i = 0; i <= dg; ++i)
			f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + (p - lead) * g[i]) % p);
		trim(f);
	}
	return f;
}

std::int64_t parse_int(std::string_view s)
{
	std::int64_t v = 0;
	auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (ec != std::errc() || ptr != s.data() + s.size())
		throw ParseError("not an integer: '" + std::string(s) + "'");
	return v;
}

struct Term
{
	std::int64_t coef;
	unsigned degree;
};

// Parses sums like "2x^3+x-1" in the variable `var`.
std::vector<Term> parse_terms(std::string_view text, char var)
{
	std::string s;
	for (char c : text)
		if (c != ' ')
			s.push_back(c);
	if (s.empty())
		throw ParseError("empty polynomial");

	std::vector<Term> terms;
	std::size_t pos = 0;
	while (pos < s.size())
	{
		int sign = 1;
		if (s[pos] == '+' || s[pos] == '-')
		{
			sign = s[pos] == '-' ? -1 : 1;
			++pos;
		}
		std::size_t end = pos;
		while (end < s.size() && s[end] != '+' && s[end] != '-')
			++end;
		std::string_view tok(s.data() + pos, end - pos);
		if (tok.empty())
			throw ParseError("malformed polynomial '" + std::string(text) + "'");

		Term term{1, 0};
		const auto vpos = tok.find(var);
		if (vpos == std::string_view::npos)
		{
			term.coef = parse_int(tok);
		}
		else
		{
			auto coef = tok.substr(0, vpos);
			if (!coef.empty() && coef.back() == '*')
				coef.remove_suffix(1);
			term.coef = coef.empty() ? 1 : parse_int(coef);
			auto rest = tok.substr(vpos + 1);
			if (rest.empty())
				term.degree = 1;
			else if (rest.front() == '^')
				term.degree = static_cast<unsigned>(parse_int(rest.substr(1)));
			else
				throw ParseError("malformed term '" + std::string(tok) + "'");
		}
		term.coef *= sign;
		terms.push_back(term);
		pos = end;
	}
	return terms;
}

// Splits n = p^k with p prime; returns false when n is not a prime power.
bool prime_power(std::uint64_t n, std::uint64_t &p, unsigned &k)
{
	if (n < 2)
		return false;
	for (std::uint64_t d = 2; d * d <= n; ++d)
	{
		if (n % d == 0)
		{
			p = d;
			k = 0;
			while (n % d == 0)
			{
				n /= d;
				++k;
			}
			return n == 1;
		}
	}
	p = n;
	k = 1;
	return true;
}

std::string format_poly_x(const Poly &f)
{
	std::string out;
	for (std::size_t i = f.size(); i-- > 0;)
	{
		if (f[i] == 0)
			continue;
		if (!out.empty())
			out += '+';
		if (i == 0 || f[i] != 1)
			out += std::to_string(f[i]);
		if (i >= 1)
			out += 'x';
		if (i >= 2)
			out += '^' + std::to_string(i);
	}
	return out.empty() ? "0" : out;
}

} // namespace

bool is_prime(std::uint64_t n) noexcept
{
	if (n < 2)
		return false;
	for (std::uint64_t d = 2; d * d <= n; ++d)
		if (n % d == 0)
			return false;
	return true;
}

bool is_irreducible(const std::vector<std::uint32_t> &poly, std::uint64_t p)
{
	Poly f = poly;
	trim(f);
	if (f.size() < 2)
		return false;
	const std::size_t deg = f.size() - 1;
	if (f.back() != 1)
		return false;
	// Try every monic divisor of degree 1..deg/2.
	for (std::size_t k = 1; 2 * k <= deg; ++k)
	{
		std::uint64_t count = 1;
		for (std::size_t i = 0; i < k; ++i)
			count *= p;
		Poly g(k + 1);
		for (std::uint64_t code = 0; code < count; ++code)
		{
			std::uint64_t c = code;
			for (std::size_t i = 0; i < k; ++i)
			{
				g[i] = static_cast<std::uint32_t>(c % p);
				c /= p;
			}
			g[k] = 1;
			if (poly_mod(f, g, p).empty())
				return false;
		}
	}
	return true;
}

Ring::Ring(Tag, RingFamily family, std::uint64_t p, unsigned m, unsigned r, std::vector<std::uint32_t> modulus)
    : family_(family), p_(p), m_(m), r_(r), modulus_(std::move(modulus))
{
	q_ = 1;
	for (unsigned i = 0; i < m_; ++i)
		q_ *= p_;
	qpow_.resize(r_ + 1);
	qpow_[0] = 1;
	for (unsigned i = 1; i <= r_; ++i)
		qpow_[i] = qpow_[i - 1] * q_;
	order_ = qpow_[r_];
	build_tables();
}

RingPtr Ring::z_power(std::uint64_t p, unsigned r, std::uint64_t max_order)
{
	if (!is_prime(p))
		throw InvalidRing("p = " + std::to_string(p) + " is not prime");
	if (r < 1)
		throw InvalidRing("length r must be at least 1");
	checked_pow(p, r, std::min(max_order, kHardOrderLimit), "ring order");
	return std::make_shared<const Ring>(Tag{}, RingFamily::ZPowerR, p, 1, r, Poly{0, 1});
}

RingPtr Ring::truncated_poly(std::uint64_t p, unsigned m, unsigned r, std::optional<std::vector<std::uint32_t>> modulus,
                             std::uint64_t max_order)
{
	if (!is_prime(p))
		throw InvalidRing("p = " + std::to_string(p) + " is not prime");
	if (m < 1)
		throw InvalidRing("extension degree m must be at least 1");
	if (r < 1)
		throw InvalidRing("length r must be at least 1");
	const std::uint64_t cap = std::min(max_order, kHardOrderLimit);
	const std::uint64_t q = checked_pow(p, m, cap, "residue field order");
	checked_pow(q, r, cap, "ring order");

	Poly mod;
	if (modulus)
	{
		mod = *modulus;
		for (auto &c : mod)
			if (c >= p)
				throw InvalidRing("modulus coefficient out of range for p = " + std::to_string(p));
		trim(mod);
		if (mod.size() != m + 1 || mod.back() != 1)
			throw InvalidRing("modulus must be monic of degree " + std::to_string(m));
		if (!is_irreducible(mod, p))
			throw InvalidRing("modulus " + format_poly_x(mod) + " is reducible over F_" + std::to_string(p));
		if (m == 1)
			mod = {0, 1}; // every linear modulus gives the same coding of F_p
	}
	else if (m == 1)
	{
		mod = {0, 1};
	}
	else
	{
		mod.assign(m + 1, 0);
		mod[m] = 1;
		bool found = false;
		for (std::uint64_t code = 0; code < q && !found; ++code)
		{
			std::uint64_t c = code;
			for (unsigned i = 0; i < m; ++i)
			{
				mod[i] = static_cast<std::uint32_t>(c % p);
				c /= p;
			}
			found = is_irreducible(mod, p);
		}
		if (!found)
			throw InvalidRing("no irreducible polynomial found"); // unreachable for prime p
	}
	return std::make_shared<const Ring>(Tag{}, RingFamily::TruncatedPoly, p, m, r, std::move(mod));
}

RingPtr Ring::parse(std::string_view spec, std::uint64_t max_order)
{
	std::string s;
	for (char c : spec)
		if (c != ' ' && c != '\t')
			s.push_back(c);

	static const std::regex zre(R"(^Z/(\d+)(?:\^(\d+))?$)");
	static const std::regex gfre(R"(^GF\((\d+)(?:\^(\d+))?(?::([^)]*))?\)\[t\]/(?:\(t(?:\^(\d+))?\)|t(?:\^(\d+))?)$)");
	std::smatch mt;
	try
	{
		if (std::regex_match(s, mt, zre))
		{
			std::uint64_t p = static_cast<std::uint64_t>(parse_int(mt[1].str()));
			unsigned r = 1;
			if (mt[2].matched)
				r = static_cast<unsigned>(parse_int(mt[2].str()));
			else if (!prime_power(p, p, r))
				throw ParseError("Z/n requires n to be a prime power: '" + s + "'");
			return z_power(p, r, max_order);
		}
		if (std::regex_match(s, mt, gfre))
		{
			std::uint64_t p = static_cast<std::uint64_t>(parse_int(mt[1].str()));
			unsigned m = 1;
			if (mt[2].matched)
				m = static_cast<unsigned>(parse_int(mt[2].str()));
			else if (!prime_power(p, p, m))
				throw ParseError("GF(q) requires q to be a prime power: '" + s + "'");
			std::optional<Poly> mod;
			if (mt[3].matched)
			{
				Poly f(m + 1, 0);
				for (const auto &term : parse_terms(mt[3].str(), 'x'))
				{
					if (term.degree > m)
						throw ParseError("modulus degree exceeds m in '" + s + "'");
					const auto pi = static_cast<std::int64_t>(p);
					f[term.degree] = static_cast<std::uint32_t>(((f[term.degree] + term.coef) % pi + pi) % pi);
				}
				mod = std::move(f);
			}
			unsigned r = 1;
			if (mt[4].matched)
				r = static_cast<unsigned>(parse_int(mt[4].str()));
			else if (mt[5].matched)
				r = static_cast<unsigned>(parse_int(mt[5].str()));
			return truncated_poly(p, m, r, std::move(mod), max_order);
		}
	}
	catch (const InvalidRing &e)
	{
		throw ParseError("invalid ring '" + s + "': " + e.what());
	}
	throw ParseError("unrecognized ring spec '" + std::string(spec) + "'");
}

std::string Ring::spec_string() const
{
	if (family_ == RingFamily::ZPowerR)
		return "Z/" + std::to_string(p_) + "^" + std::to_string(r_);
	std::string field = "GF(" + std::to_string(p_);
	if (m_ > 1)
		field += "^" + std::to_string(m_) + ":" + format_poly_x(modulus_);
	return field + ")[t]/t^" + std::to_string(r_);
}

bool Ring::operator==(const Ring &other) const noexcept
{
	return family_ == other.family_ && p_ == other.p_ && m_ == other.m_ && r_ == other.r_ && modulus_ == other.modulus_;
}

void Ring::build_tables()
{
	if (q_ <= kFieldTableLimit)
	{
		fadd_.resize(q_ * q_);
		fmul_.resize(q_ * q_);
		fneg_.resize(q_);
		finv_.assign(q_, 0);
		for (std::uint32_t a = 0; a < q_; ++a)
		{
			std::uint32_t n = 0, mult = 1, c = a;
			for (unsigned i = 0; i < m_; ++i)
			{
				n += static_cast<std::uint32_t>((p_ - c % p_) % p_) * mult;
				c /= static_cast<std::uint32_t>(p_);
				mult *= static_cast<std::uint32_t>(p_);
			}
			fneg_[a] = n;
			for (std::uint32_t b = 0; b < q_; ++b)
			{
				std::uint32_t s = 0, ca = a, cb = b;
				mult = 1;
				for (unsigned i = 0; i < m_; ++i)
				{
					s += static_cast<std::uint32_t>((ca % p_ + cb % p_) % p_) * mult;
					ca /= static_cast<std::uint32_t>(p_);
					cb /= static_cast<std::uint32_t>(p_);
					mult *= static_cast<std::uint32_t>(p_);
				}
				fadd_[a * q_ + b] = s;
				fmul_[a * q_ + b] = field_mul_slow(a, b);
				if (fmul_[a * q_ + b] == 1)
					finv_[a] = b;
			}
		}
	}
	if (family_ == RingFamily::TruncatedPoly && order_ <= kRingTableLimit)
	{
		radd_.resize(order_ * order_);
		rmul_.resize(order_ * order_);
		for (std::uint32_t x = 0; x < order_; ++x)
			for (std::uint32_t y = 0; y < order_; ++y)
			{
				radd_[x * order_ + y] = trunc_add(x, y);
				rmul_[x * order_ + y] = trunc_mul(x, y);
			}
	}
}

std::uint32_t Ring::field_mul_slow(std::uint32_t a, std::uint32_t b) const noexcept
{
	if (m_ == 1)
		return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
	Poly fa(m_), fb(m_), prod(2 * m_ - 1, 0);
	for (unsigned i = 0; i < m_; ++i)
	{
		fa[i] = static_cast<std::uint32_t>(a % p_);
		fb[i] = static_cast<std::uint32_t>(b % p_);
		a /= static_cast<std::uint32_t>(p_);
		b /= static_cast<std::uint32_t>(p_);
	}
	for (unsigned i = 0; i < m_; ++i)
		for (unsigned j = 0; j < m_; ++j)
			prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{fa[i]} * fb[j]) % p_);
	Poly rem = poly_mod(prod, modulus_, p_);
	std::uint32_t code = 0;
	for (std::size_t i = rem.size(); i-- > 0;)
		code = code * static_cast<std::uint32_t>(p_) + rem[i];
	return code;
}

std::uint32_t Ring::field_add(std::uint32_t a, std::uint32_t b) const noexcept
{
	if (!fadd_.empty())
		return fadd_[a * q_ + b];
	if (m_ == 1)
		return static_cast<std::uint32_t>((std::uint64_t{a} + b) % p_);
	std::uint32_t s = 0, mult = 1;
	for (unsigned i = 0; i < m_; ++i)
	{
		s += static_cast<std::uint32_t>((a % p_ + b % p_) % p_) * mult;
		a /= static_cast<std::uint32_t>(p_);
		b /= static_cast<std::uint32_t>(p_);
		mult *= static_cast<std::uint32_t>(p_);
	}
	return s;
}

std::uint32_t Ring::field_neg(std::uint32_t a) const noexcept
{
	if (!fneg_.empty())
		return fneg_[a];
	std::uint32_t n = 0, mult = 1;
	for (unsigned i = 0; i < m_; ++i)
	{
		n += static_cast<std::uint32_t>((p_ - a % p_) % p_) * mult;
		a /= static_cast<std::uint32_t>(p_);
		mult *= static_cast<std::uint32_t>(p_);
	}
	return n;
}

std::uint32_t Ring::field_mul(std::uint32_t a, std::uint32_t b) const noexcept
{
	if (!fmul_.empty())
		return fmul_[a * q_ + b];
	return field_mul_slow(a, b);
}

std::uint32_t Ring::field_inv(std::uint32_t a) const
{
	if (a == 0)
		throw NotInvertible("zero has no inverse in the residue field");
	if (!finv_.empty())
		return finv_[a];
	if (m_ == 1)
		return static_cast<std::uint32_t>(inv_mod_prime(a, p_));
	// a^(q-2)
	std::uint32_t result = 1, base = a;
	std::uint64_t e = q_ - 2;
	while (e)
	{
		if (e & 1)
			result = field_mul(result, base);
		base = field_mul(base, base);
		e >>= 1;
	}
	return result;
}

std::uint32_t Ring::digit(std::uint32_t x, unsigned i) const noexcept
{
	return static_cast<std::uint32_t>(x / qpow_[i] % q_);
}

std::uint32_t Ring::trunc_add(std::uint32_t x, std::uint32_t y) const noexcept
{
	std::uint32_t out = 0;
	for (unsigned i = 0; i < r_; ++i)
	{
		out += field_add(static_cast<std::uint32_t>(x % q_), static_cast<std::uint32_t>(y % q_)) *
		       static_cast<std::uint32_t>(qpow_[i]);
		x /= static_cast<std::uint32_t>(q_);
		y /= static_cast<std::uint32_t>(q_);
	}
	return out;
}

std::uint32_t Ring::trunc_neg(std::uint32_t x) const noexcept
{
	std::uint32_t out = 0;
	for (unsigned i = 0; i < r_; ++i)
	{
		out += field_neg(static_cast<std::uint32_t>(x % q_)) * static_cast<std::uint32_t>(qpow_[i]);
		x /= static_cast<std::uint32_t>(q_);
	}
	return out;
}

std::uint32_t Ring::trunc_mul(std::uint32_t x, std::uint32_t y) const noexcept
{
	std::uint32_t a[32], b[32], c[32];
	for (unsigned i = 0; i < r_; ++i)
	{
		a[i] = static_cast<std::uint32_t>(x % q_);
		b[i] = static_cast<std::uint32_t>(y % q_);
		c[i] = 0;
		x /= static_cast<std::uint32_t>(q_);
		y /= static_cast<std::uint32_t>(q_);
	}
	for (unsigned i = 0; i < r_; ++i)
	{
		if (a[i] == 0)
			continue;
		for (unsigned j = 0; i + j < r_; ++j)
			c[i + j] = field_add(c[i + j], field_mul(a[i], b[j]));
	}
	std::uint32_t out = 0;
	for (unsigned i = r_; i-- > 0;)
		out = out * static_cast<std::uint32_t>(q_) + c[i];
	return out;
}

std::uint32_t Ring::add_raw(std::uint32_t x, std::uint32_t y) const noexcept
{
	if (family_ == RingFamily::ZPowerR)
	{
		const std::uint64_t s = std::uint64_t{x} + y;
		return static_cast<std::uint32_t>(s >= order_ ? s - order_ : s);
	}
	if (!radd_.empty())
		return radd_[x * order_ + y];
	return trunc_add(x, y);
}

std::uint32_t Ring::neg_raw(std::uint32_t x) const noexcept
{
	if (family_ == RingFamily::ZPowerR)
		return x == 0 ? 0 : static_cast<std::uint32_t>(order_ - x);
	return trunc_neg(x);
}

std::uint32_t Ring::sub_raw(std::uint32_t x, std::uint32_t y) const noexcept
{
	return add_raw(x, neg_raw(y));
}

std::uint32_t Ring::mul_raw(std::uint32_t x, std::uint32_t y) const noexcept
{
	if (family_ == RingFamily::ZPowerR)
		return static_cast<std::uint32_t>(std::uint64_t{x} * y % order_);
	if (!rmul_.empty())
		return rmul_[x * order_ + y];
	return trunc_mul(x, y);
}

void Ring::check(RingElem x) const
{
	if (x.index() >= order_)
		throw InvalidElement("element index " + std::to_string(x.index()) + " out of range for " + spec_string());
}

RingElem Ring::element(std::uint64_t index) const
{
	if (index >= order_)
		throw InvalidElement("element index " + std::to_string(index) + " out of range for " + spec_string());
	return RingElem(static_cast<std::uint32_t>(index));
}

RingElem Ring::from_int(std::int64_t n) const noexcept
{
	const auto modulus = static_cast<std::int64_t>(family_ == RingFamily::ZPowerR ? order_ : p_);
	return RingElem(static_cast<std::uint32_t>((n % modulus + modulus) % modulus));
}

RingElem Ring::uniformizer() const noexcept
{
	return RingElem(r_ == 1 ? 0 : static_cast<std::uint32_t>(q_));
}

RingElem Ring::add(RingElem x, RingElem y) const
{
	check(x);
	check(y);
	return RingElem(add_raw(x.index(), y.index()));
}

RingElem Ring::sub(RingElem x, RingElem y) const
{
	check(x);
	check(y);
	return RingElem(sub_raw(x.index(), y.index()));
}

RingElem Ring::neg(RingElem x) const
{
	check(x);
	return RingElem(neg_raw(x.index()));
}

RingElem Ring::mul(RingElem x, RingElem y) const
{
	check(x);
	check(y);
	return RingElem(mul_raw(x.index(), y.index()));
}

RingElem Ring::pow(RingElem x, std::uint64_t e) const
{
	check(x);
	std::uint32_t result = 1 % static_cast<std::uint32_t>(order_), base = x.index();
	while (e)
	{
		if (e & 1)
			result = mul_raw(result, base);
		base = mul_raw(base, base);
		e >>= 1;
	}
	return RingElem(result);
}

bool Ring::is_unit(RingElem x) const
{
	check(x);
	return is_unit_raw(x.index());
}

RingElem Ring::inverse(RingElem x) const
{
	check(x);
	if (!is_unit_raw(x.index()))
		throw NotInvertible(format(x) + " is not a unit in " + spec_string());
	const auto residue = static_cast<std::uint32_t>(x.index() % q_);
	// Residue inverse as the constant lift, then y <- y(2 - xy) doubles precision.
	std::uint32_t y = field_inv(residue);
	const std::uint32_t two = from_int(2).index();
	for (unsigned precision = 1; precision < r_; precision *= 2)
		y = mul_raw(y, sub_raw(two, mul_raw(x.index(), y)));
	return RingElem(y);
}

unsigned Ring::valuation(RingElem x) const
{
	check(x);
	std::uint32_t v = x.index();
	if (v == 0)
		return r_;
	unsigned k = 0;
	while (v % q_ == 0)
	{
		v /= static_cast<std::uint32_t>(q_);
		++k;
	}
	return k;
}

std::vector<RingElem> Ring::elements() const
{
	std::vector<RingElem> out;
	out.reserve(order_);
	for (std::uint32_t i = 0; i < order_; ++i)
		out.emplace_back(i);
	return out;
}

std::vector<RingElem> Ring::units() const
{
	std::vector<RingElem> out;
	out.reserve(unit_count());
	for (std::uint32_t i = 0; i < order_; ++i)
		if (is_unit_raw(i))
			out.emplace_back(i);
	return out;
}

std::vector<RingElem> Ring::nonunits() const
{
	std::vector<RingElem> out;
	out.reserve(nonunit_count());
	for (std::uint32_t i = 0; i < order_; ++i)
		if (!is_unit_raw(i))
			out.emplace_back(i);
	return out;
}

std::string Ring::format(RingElem x) const
{
	check(x);
	if (family_ == RingFamily::ZPowerR)
		return std::to_string(x.index());
	std::string out;
	for (unsigned i = 0; i < r_; ++i)
	{
		const auto c = digit(x.index(), i);
		if (c == 0)
			continue;
		if (!out.empty())
			out += '+';
		if (i == 0 || c != 1)
			out += std::to_string(c);
		if (i >= 1)
			out += 't';
		if (i >= 2)
			out += '^' + std::to_string(i);
	}
	return out.empty() ? "0" : out;
}

RingElem Ring::parse_element(std::string_view text) const
{
	if (family_ == RingFamily::ZPowerR)
	{
		std::string s;
		for (char c : text)
			if (c != ' ')
				s.push_back(c);
		return from_int(parse_int(s) % static_cast<std::int64_t>(order_));
	}
	std::vector<std::uint32_t> digits(r_, 0);
	for (const auto &term : parse_terms(text, 't'))
	{
		if (term.degree >= r_)
			throw ParseError("degree " + std::to_string(term.degree) + " exceeds t^" + std::to_string(r_ - 1));
		if (term.coef < 0 || static_cast<std::uint64_t>(term.coef) >= q_)
			throw ParseError("coefficient code out of range for F_" + std::to_string(q_));
		digits[term.degree] = field_add(digits[term.degree], static_cast<std::uint32_t>(term.coef));
	}
	std::uint32_t out = 0;
	for (unsigned i = r_; i-- > 0;)
		out = out * static_cast<std::uint32_t>(q_) + digits[i];
	return RingElem(out);
}

} // namespace valring
