/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_RNG_HH
#define SMLP_RNG_HH

#include <smlp/ival.hh>

#include <cstdint>
#include <random>

namespace smlp {

/* Deterministic random source.  The generator is the standard-specified
 * mt19937_64 engine; the derived draws below are written out explicitly
 * because the <random> distributions are implementation-defined and
 * would break run-to-run reproducibility across toolchains. */
struct rng {

	std::mt19937_64 g;

	explicit rng(uint64_t seed) : g(seed) {}

	uint64_t bits() { return g(); }

	/* uniform integer in [0, n) by rejection */
	uint64_t below(uint64_t n)
	{
		if (!n)
			die("empty draw range");
		uint64_t t = (-n) % n; /* 2^64 mod n */
		uint64_t r;
		do
			r = g();
		while (r < t);
		return r % n;
	}

	/* uniform rational in [0, 1) with 53 random bits */
	Q unit()
	{
		unsigned long num = (unsigned long)(g() >> 11);
		Q q(num, (unsigned long)1 << 53);
		q.canonicalize();
		return q;
	}

	/* uniform rational in the closed-open interval [lo, hi) (or the
	 * point itself when it is degenerate) */
	Q uniform(const ival &v)
	{
		if (v.is_point())
			return v.lo;
		return v.lo + unit() * v.width();
	}

	/* uniform integer in [lo, hi] */
	Z uniform_int(const Z &lo, const Z &hi)
	{
		Z span = hi - lo + 1;
		if (span <= 0)
			die("empty integer range");
		if (!span.fits_ulong_p())
			die("integer range too wide to sample");
		return lo + Z(below(span.get_ui()));
	}

	/* uniformly shuffled prefix: the first k entries of a random
	 * permutation of 0..n-1 (Fisher-Yates) */
	vec<size_t> perm_prefix(size_t n, size_t k)
	{
		vec<size_t> p(n);
		for (size_t i = 0; i < n; i++)
			p[i] = i;
		for (size_t i = 0; i < k && i+1 < n; i++) {
			size_t j = i + (size_t)below(n - i);
			std::swap(p[i], p[j]);
		}
		p.resize(k);
		return p;
	}
};

} // namespace smlp

#endif
