/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_DOE_HH
#define SMLP_DOE_HH

#include <smlp/csv.hh>
#include <smlp/rng.hh>

namespace smlp {

/* Design-of-experiments generation.  The input is a CSV whose header
 * names the variables and whose columns list candidate grid values;
 * columns may have different lengths, blank cells are ignored. */

struct doe_level {

	Q value;
	str lit; /* spelling from the input file, reused in the output */
};

struct doe_grid {

	vec<str> cols;
	vec<vec<doe_level>> levels; /* sorted ascending, unique values */
};

inline doe_grid parse_doe_grid(const raw_csv &raw, const str &origin)
{
	doe_grid g;
	g.cols = raw.cols;
	g.levels.resize(g.cols.size());
	for (size_t c = 0; c < g.cols.size(); c++) {
		for (size_t r = 0; r < raw.rows.size(); r++) {
			if (c >= raw.rows[r].size() ||
			    raw.rows[r][c].empty())
				continue;
			opt<Q> q = try_parse_q(raw.rows[r][c]);
			if (!q)
				die("'%s': column '%s': invalid grid value "
				    "'%s'", origin.c_str(), g.cols[c].c_str(),
				    raw.rows[r][c].c_str());
			g.levels[c].push_back({ move(*q), raw.rows[r][c] });
		}
		if (g.levels[c].empty())
			die("'%s': column '%s' has no grid values",
			    origin.c_str(), g.cols[c].c_str());
		std::sort(g.levels[c].begin(), g.levels[c].end(),
		          [](const doe_level &a, const doe_level &b)
		          { return a.value < b.value; });
		g.levels[c].erase(std::unique(g.levels[c].begin(),
			g.levels[c].end(),
			[](const doe_level &a, const doe_level &b)
			{ return a.value == b.value; }), g.levels[c].end());
	}
	return g;
}

inline doe_grid load_doe_grid(const str &path)
{
	return parse_doe_grid(load_raw_csv(path), path);
}

struct doe_design {

	vec<str> cols;
	vec<vec<str>> rows;
};

/* every combination of levels; the first column varies fastest */
inline doe_design doe_full_factorial(const doe_grid &g)
{
	doe_design d;
	d.cols = g.cols;
	size_t total = 1;
	for (const auto &lv : g.levels) {
		if (total > 10000000 / lv.size())
			die("full factorial design is too large");
		total *= lv.size();
	}
	d.rows.reserve(total);
	for (size_t r = 0; r < total; r++) {
		vec<str> row;
		size_t idx = r;
		for (size_t c = 0; c < g.cols.size(); c++) {
			size_t n = g.levels[c].size();
			row.push_back(g.levels[c][idx % n].lit);
			idx /= n;
		}
		d.rows.push_back(move(row));
	}
	return d;
}

/* n samples; within each column no grid value is used twice */
inline doe_design doe_latin_hypercube(const doe_grid &g, size_t n,
                                      uint64_t seed)
{
	doe_design d;
	d.cols = g.cols;
	for (const auto &lv : g.levels)
		if (n > lv.size())
			die("latin hypercube with %zu samples needs at "
			    "least %zu values per column", n, n);
	rng r(seed);
	vec<vec<size_t>> pick;
	for (const auto &lv : g.levels)
		pick.push_back(r.perm_prefix(lv.size(), n));
	for (size_t i = 0; i < n; i++) {
		vec<str> row;
		for (size_t c = 0; c < g.cols.size(); c++)
			row.push_back(g.levels[c][pick[c][i]].lit);
		d.rows.push_back(move(row));
	}
	return d;
}

/* centers of a uniform k^d cell grid over the hull of each column,
 * where k is the largest integer with k^d <= n */
inline doe_design doe_sukharev(const doe_grid &g, size_t n)
{
	size_t dim = g.cols.size();
	if (!n)
		die("sukharev grid needs at least one sample");
	size_t k = 1;
	for (;;) {
		size_t p = 1;
		bool over = false;
		for (size_t i = 0; i < dim; i++) {
			if (p > n / (k+1)) {
				over = true;
				break;
			}
			p *= k+1;
		}
		if (over || p > n)
			break;
		k++;
	}
	doe_design d;
	d.cols = g.cols;
	size_t total = 1;
	for (size_t i = 0; i < dim; i++)
		total *= k;
	for (size_t r = 0; r < total; r++) {
		vec<str> row;
		size_t idx = r;
		for (size_t c = 0; c < dim; c++) {
			size_t i = idx % k;
			idx /= k;
			const Q &lo = g.levels[c].front().value;
			const Q &hi = g.levels[c].back().value;
			Q v = lo + Q((long)(2*i + 1)) * (hi - lo) /
			      Q((long)(2*k));
			row.push_back(dbl_str(q_dbl(v)));
		}
		d.rows.push_back(move(row));
	}
	return d;
}

/* n independent uniform samples over the hull of each column */
inline doe_design doe_uniform_random(const doe_grid &g, size_t n,
                                     uint64_t seed)
{
	doe_design d;
	d.cols = g.cols;
	rng r(seed);
	for (size_t i = 0; i < n; i++) {
		vec<str> row;
		for (size_t c = 0; c < g.cols.size(); c++) {
			const Q &lo = g.levels[c].front().value;
			const Q &hi = g.levels[c].back().value;
			row.push_back(dbl_str(q_dbl(
				r.uniform(ival(lo, hi)))));
		}
		d.rows.push_back(move(row));
	}
	return d;
}

inline doe_design run_doe(const doe_grid &g, const str &algo, size_t n,
                          uint64_t seed)
{
	if (algo == "full_factorial")
		return doe_full_factorial(g);
	if (algo == "latin_hypercube")
		return doe_latin_hypercube(g, n, seed);
	if (algo == "sukharev_grid")
		return doe_sukharev(g, n);
	if (algo == "uniform_random")
		return doe_uniform_random(g, n, seed);
	die("unknown design algorithm '%s'", algo.c_str());
}

} // namespace smlp

#endif
