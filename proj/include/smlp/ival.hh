/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_IVAL_HH
#define SMLP_IVAL_HH

#include <smlp/q.hh>

namespace smlp {

/* closed bounded interval, lo <= hi */
struct ival {

	Q lo, hi;

	ival() : lo(0), hi(0) {}
	ival(Q l, Q h) : lo(move(l)), hi(move(h)) {}
	explicit ival(const Q &p) : lo(p), hi(p) {}

	Q width() const { return hi - lo; }
	Q mid() const { return (lo + hi) / 2; }
	bool is_point() const { return lo == hi; }
	bool contains(const Q &q) const { return lo <= q && q <= hi; }

	friend bool operator==(const ival &a, const ival &b)
	{ return a.lo == b.lo && a.hi == b.hi; }
};

inline opt<ival> isect(const ival &a, const ival &b)
{
	Q lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
	if (lo > hi)
		return std::nullopt;
	return ival(lo, hi);
}

/* possibly unbounded interval; absent endpoint = infinite on that side */
struct xiv {

	opt<Q> lo, hi;

	xiv() {} /* entire line */
	xiv(opt<Q> l, opt<Q> h) : lo(move(l)), hi(move(h)) {}
	explicit xiv(const Q &p) : lo(p), hi(p) {}
	explicit xiv(const ival &v) : lo(v.lo), hi(v.hi) {}

	bool bounded() const { return lo && hi; }
	bool is_zero() const { return lo && hi && sgn(*lo) == 0 && sgn(*hi) == 0; }
	bool contains_zero() const
	{ return (!lo || sgn(*lo) <= 0) && (!hi || sgn(*hi) >= 0); }
};

inline opt<xiv> xisect(const xiv &a, const xiv &b)
{
	opt<Q> lo = a.lo, hi = a.hi;
	if (b.lo && (!lo || *b.lo > *lo))
		lo = b.lo;
	if (b.hi && (!hi || *b.hi < *hi))
		hi = b.hi;
	if (lo && hi && *lo > *hi)
		return std::nullopt;
	return xiv(lo, hi);
}

inline xiv xneg(const xiv &a)
{
	opt<Q> lo, hi;
	if (a.hi)
		lo = -*a.hi;
	if (a.lo)
		hi = -*a.lo;
	return xiv(lo, hi);
}

inline xiv xadd(const xiv &a, const xiv &b)
{
	opt<Q> lo, hi;
	if (a.lo && b.lo)
		lo = *a.lo + *b.lo;
	if (a.hi && b.hi)
		hi = *a.hi + *b.hi;
	return xiv(lo, hi);
}

inline xiv xsub(const xiv &a, const xiv &b)
{
	return xadd(a, xneg(b));
}

namespace detail {

/* extended endpoint: inf = -1, 0 (finite v), +1 */
struct xep {
	int inf;
	Q v;
};

inline int xep_sgn(const xep &e) { return e.inf ? e.inf : sgn(e.v); }

/* product with the hull convention 0 * inf = 0 */
inline xep xep_mul(const xep &a, const xep &b)
{
	if (a.inf || b.inf) {
		int s = xep_sgn(a) * xep_sgn(b);
		if (!s)
			return { 0, Q(0) };
		return { s, Q(0) };
	}
	return { 0, a.v * b.v };
}

inline bool xep_lt(const xep &a, const xep &b)
{
	if (a.inf != b.inf)
		return a.inf < b.inf;
	return !a.inf && a.v < b.v;
}

} // namespace detail

inline xiv xmul(const xiv &a, const xiv &b)
{
	using detail::xep;
	xep ea[2] = { a.lo ? xep{0, *a.lo} : xep{-1, Q(0)},
	              a.hi ? xep{0, *a.hi} : xep{+1, Q(0)} };
	xep eb[2] = { b.lo ? xep{0, *b.lo} : xep{-1, Q(0)},
	              b.hi ? xep{0, *b.hi} : xep{+1, Q(0)} };
	xep mn = detail::xep_mul(ea[0], eb[0]), mx = mn;
	for (int i = 0; i < 2; i++)
		for (int j = 0; j < 2; j++) {
			xep p = detail::xep_mul(ea[i], eb[j]);
			if (detail::xep_lt(p, mn))
				mn = p;
			if (detail::xep_lt(mx, p))
				mx = p;
		}
	opt<Q> lo, hi;
	if (!mn.inf)
		lo = mn.v;
	if (!mx.inf)
		hi = mx.v;
	return xiv(lo, hi);
}

/* hull of { 1/b : b in B, b != 0 }; nullopt when B = [0,0] (nowhere
 * defined) */
inline opt<xiv> xrecip(const xiv &b)
{
	if (b.is_zero())
		return std::nullopt;
	bool lo_nonneg = b.lo && sgn(*b.lo) >= 0;
	bool hi_nonpos = b.hi && sgn(*b.hi) <= 0;
	if (lo_nonneg) {
		opt<Q> lo, hi;
		if (b.hi)
			lo = Q(1) / *b.hi;
		else
			lo = Q(0);
		if (sgn(*b.lo) > 0)
			hi = Q(1) / *b.lo;
		return xiv(lo, hi);
	}
	if (hi_nonpos) {
		opt<Q> lo, hi;
		if (b.lo)
			hi = Q(1) / *b.lo;
		else
			hi = Q(0);
		if (sgn(*b.hi) < 0)
			lo = Q(1) / *b.hi;
		return xiv(lo, hi);
	}
	return xiv(); /* spans zero: hull is the entire line */
}

/* hull of { a/b : defined }; nullopt when nowhere defined */
inline opt<xiv> xdiv(const xiv &a, const xiv &b)
{
	opt<xiv> r = xrecip(b);
	if (!r)
		return std::nullopt;
	return xmul(a, *r);
}

} // namespace smlp

#endif
