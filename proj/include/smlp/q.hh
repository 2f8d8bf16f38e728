/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_Q_HH
#define SMLP_Q_HH

#include <smlp/common.hh>

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <gmpxx.h>

namespace smlp {

/* All arithmetic in the library is exact rational arithmetic. */
using Q = mpq_class;
using Z = mpz_class;

inline Z q_num(const Q &q) { return q.get_num(); }
inline Z q_den(const Q &q) { return q.get_den(); }

inline bool q_is_int(const Q &q) { return q.get_den() == 1; }

inline Z q_floor(const Q &q)
{
	Z r;
	mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return r;
}

inline Z q_ceil(const Q &q)
{
	Z r;
	mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
	return r;
}

/* nearest integer, ties toward -infinity */
inline Z q_round_tie_low(const Q &q)
{
	return q_ceil(q - Q(1,2));
}

inline double q_dbl(const Q &q) { return mpq_get_d(q.get_mpq_t()); }

inline Q q_abs(const Q &q) { return abs(q); }

/* q^e for integer e; e < 0 inverts (q must be non-zero then) */
inline Q q_pow(const Q &q, long e)
{
	if (e == 0)
		return 1;
	bool inv = e < 0;
	unsigned long u = inv ? -(unsigned long)e : (unsigned long)e;
	if (inv && sgn(q) == 0)
		die("0 raised to negative power");
	Z n, d;
	mpz_pow_ui(n.get_mpz_t(), q.get_num_mpz_t(), u);
	mpz_pow_ui(d.get_mpz_t(), q.get_den_mpz_t(), u);
	Q r = inv ? Q(d, n) : Q(n, d);
	r.canonicalize();
	return r;
}

/* canonical rational spelling: "n" or "n/d" */
inline str q_str(const Q &q)
{
	return q.get_str();
}

/* Exact parse of "123", "-4.25", "1e-3", "6.000000067055225", "3/4".
 * Every decimal literal maps to the rational it denotes. */
inline opt<Q> try_parse_q(strview s)
{
	while (!s.empty() && isspace((unsigned char)s.front()))
		s.remove_prefix(1);
	while (!s.empty() && isspace((unsigned char)s.back()))
		s.remove_suffix(1);
	if (s.empty())
		return std::nullopt;
	size_t slash = s.find('/');
	if (slash != strview::npos) {
		opt<Q> n = try_parse_q(s.substr(0, slash));
		opt<Q> d = try_parse_q(s.substr(slash+1));
		if (!n || !d || !q_is_int(*n) || !q_is_int(*d) || sgn(*d) == 0)
			return std::nullopt;
		Q r = *n / *d;
		r.canonicalize();
		return r;
	}
	int sign = 1;
	if (s.front() == '+' || s.front() == '-') {
		if (s.front() == '-')
			sign = -1;
		s.remove_prefix(1);
	}
	long e10 = 0;
	size_t ep = s.find_first_of("eE");
	if (ep != strview::npos) {
		strview es = s.substr(ep+1);
		s = s.substr(0, ep);
		if (es.empty())
			return std::nullopt;
		auto [p, ec] = std::from_chars(es.data(), es.data()+es.size(), e10);
		if (ec != std::errc() || p != es.data()+es.size())
			return std::nullopt;
	}
	size_t dot = s.find('.');
	str digits;
	size_t frac = 0;
	if (dot != strview::npos) {
		digits = str(s.substr(0, dot)) + str(s.substr(dot+1));
		frac = s.size() - dot - 1;
	} else
		digits = str(s);
	if (digits.empty())
		return std::nullopt;
	for (char c : digits)
		if (!isdigit((unsigned char)c))
			return std::nullopt;
	Z n(digits, 10);
	Q r(n);
	long shift = e10 - (long)frac;
	if (shift > 0) {
		Z p;
		mpz_ui_pow_ui(p.get_mpz_t(), 10, (unsigned long)shift);
		r *= Q(p);
	} else if (shift < 0) {
		Z p;
		mpz_ui_pow_ui(p.get_mpz_t(), 10, (unsigned long)-shift);
		r /= Q(p);
	}
	r.canonicalize();
	return sign < 0 ? Q(-r) : r;
}

inline Q parse_q(strview s)
{
	opt<Q> q = try_parse_q(s);
	if (!q)
		die("invalid numeric literal '%.*s'", (int)s.size(), s.data());
	return *q;
}

/* shortest round-trip decimal form of a double, Python-style
 * ("0.0", "6.000000067055225", "1e+20") */
inline str dbl_str(double d)
{
	char buf[64];
	auto [p, ec] = std::to_chars(buf, buf+sizeof(buf), d);
	(void)ec;
	str s(buf, p);
	if (s.find_first_of(".eEna") == str::npos) /* integral, not nan/inf */
		s += ".0";
	return s;
}

} // namespace smlp

#endif
