/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_REFINE_HH
#define SMLP_REFINE_HH

#include <smlp/spec.hh>
#include <smlp/model.hh>
#include <smlp/csv.hh>
#include <smlp/rng.hh>

namespace smlp {

/* Draw one value uniformly from an interval, restricted to the integers
 * when the variable is integral. */
namespace detail {

inline Q sample_in(rng &r, const ival &v, bool integral)
{
	if (!integral)
		return r.uniform(v);
	Z lo = q_ceil(v.lo), hi = q_floor(v.hi);
	if (lo > hi)
		die("no integer in sampling interval [%s, %s]",
		    q_str(v.lo).c_str(), q_str(v.hi).c_str());
	return Q(r.uniform_int(lo, hi));
}

} // namespace detail

/* Sample the system uniformly inside the stability region of a knob
 * configuration: knobs range over their stability ball (clipped to the
 * declared range), inputs over their declared ranges.  Returns a dataset
 * whose columns are the system's features followed by its outputs. */
inline dataset sample_stability_region(const problem_spec &sp,
                                       const model_def &system,
                                       const hmap<str,Q> &center,
                                       size_t n, uint64_t seed)
{
	if (!n)
		die("sample_stability_region: need at least one sample");
	vec<pair<str,ival>> ball = stability_ball(sp, center);
	auto ball_of = [&](strview name) -> const ival * {
		for (auto &[k, v] : ball)
			if (k == name)
				return &v;
		return nullptr;
	};
	struct src { ival v; bool integral; };
	vec<src> dims;
	for (const str &f : system.features) {
		const var_spec *d = sp.find_var(f);
		if (!d)
			die("sample_stability_region: model feature '%s' not "
			    "in problem variables", f.c_str());
		if (d->kind == vkind::KNOB) {
			const ival *b = ball_of(f);
			if (!b)
				die("sample_stability_region: no value for "
				    "knob '%s' in configuration", f.c_str());
			dims.push_back({ *b, d->integral() });
		} else if (d->kind == vkind::INPUT) {
			if (!d->range)
				die("sample_stability_region: input '%s' has "
				    "no range to sample from", f.c_str());
			dims.push_back({ *d->range, d->integral() });
		} else {
			die("sample_stability_region: '%s' is an output, not "
			    "a model feature", f.c_str());
		}
	}
	dataset out;
	out.cols = system.features;
	for (const str &o : system.outputs)
		out.cols.push_back(o);
	rng r(seed);
	for (size_t i = 0; i < n; i++) {
		hmap<str,Q> asgn;
		vec<Q> row;
		for (size_t j = 0; j < dims.size(); j++) {
			Q v = detail::sample_in(r, dims[j].v,
			                        dims[j].integral);
			asgn[system.features[j]] = v;
			row.push_back(move(v));
		}
		hmap<str,Q> ys = eval_model(system, asgn);
		for (const str &o : system.outputs)
			row.push_back(ys.at(o));
		out.rows.push_back(move(row));
	}
	return out;
}

/* Check whether any sampled point reproduces an assertion failure on the
 * system: outputs are re-derived from the system at each row's feature
 * values, then the assertion is evaluated exactly. */
struct confirm_result {
	bool confirmed;
	size_t row;       /* index into samples when confirmed */
	hmap<str,Q> point; /* features + system outputs at that row */
};

inline confirm_result confirm_counterexample(const model_def &system,
                                             const eptr &assertion,
                                             const dataset &samples)
{
	vec<size_t> fidx;
	for (const str &f : system.features) {
		int c = samples.col(f);
		if (c < 0)
			die("confirm_counterexample: samples lack feature "
			    "column '%s'", f.c_str());
		fidx.push_back((size_t)c);
	}
	for (size_t i = 0; i < samples.nrows(); i++) {
		hmap<str,Q> asgn;
		for (size_t j = 0; j < fidx.size(); j++)
			asgn[system.features[j]] = samples.rows[i][fidx[j]];
		hmap<str,Q> ys = eval_model(system, asgn);
		for (auto &[k, v] : ys)
			asgn[k] = v;
		if (!eval_bool(assertion, asgn))
			return { true, i, move(asgn) };
	}
	return { false, 0, {} };
}

/* Concatenate datasets, replicating each new row ceil(weight) times so
 * that re-sampled points weigh more in refitting.  Column sets must
 * match; new columns are permuted into the original order. */
inline dataset weighted_concat(const dataset &orig, const dataset &extra,
                               const Q &weight)
{
	if (sgn(weight) <= 0)
		die("weighted_concat: weight must be positive");
	vec<size_t> perm;
	for (const str &c : orig.cols) {
		int i = extra.col(c);
		if (i < 0)
			die("weighted_concat: new samples lack column '%s'",
			    c.c_str());
		perm.push_back((size_t)i);
	}
	if (extra.ncols() != orig.ncols())
		die("weighted_concat: column sets differ (%zu vs %zu)",
		    extra.ncols(), orig.ncols());
	Z reps_z = q_ceil(weight);
	if (!reps_z.fits_ulong_p())
		die("weighted_concat: weight too large");
	size_t reps = reps_z.get_ui();
	dataset out = orig;
	for (const vec<Q> &r : extra.rows) {
		vec<Q> row;
		for (size_t i : perm)
			row.push_back(r[i]);
		for (size_t k = 0; k < reps; k++)
			out.rows.push_back(row);
	}
	return out;
}

/* Refit a model on the original data augmented with weighted new samples. */
struct refine_opts {
	model_def::kind kind = model_def::TREE;
	vec<str> features, responses;
	Q weight = Q(1);
	bool per_response = false;
	int max_depth = 15;
	int degree = 2;
};

inline model_def refine_model(const dataset &old_data,
                              const dataset &new_samples,
                              const refine_opts &o)
{
	dataset all = new_samples.nrows()
	            ? weighted_concat(old_data, new_samples, o.weight)
	            : old_data;
	switch (o.kind) {
	case model_def::TREE:
		return fit_tree(all, o.features, o.responses, o.per_response,
		                o.max_depth);
	case model_def::POLYNOMIAL:
		return fit_polynomial(all, o.features, o.responses,
		                      o.degree).m;
	default:
		die("refine_model: only tree and polynomial models can be "
		    "refit");
	}
}

/* Make an assertion harder to satisfy by shifting every inequality's
 * right-hand side against it by a fixed margin.  Equalities and
 * disequalities are left untouched; the transform is syntactic and does
 * not track polarity under 'not'. */
inline eptr strengthen_assertion(const eptr &e, const Q &offset)
{
	if (!e)
		return e;
	switch (e->op) {
	case eop::LE:
	case eop::LT:
		return mk2(e->op, e->a,
		           mk2(eop::SUB, e->b, mk_cnst(offset)));
	case eop::GE:
	case eop::GT:
		return mk2(e->op, e->a,
		           mk2(eop::ADD, e->b, mk_cnst(offset)));
	case eop::AND:
	case eop::OR:
	case eop::XOR:
		return mk2(e->op, strengthen_assertion(e->a, offset),
		           strengthen_assertion(e->b, offset));
	case eop::NOT:
		return mk1(eop::NOT, strengthen_assertion(e->a, offset));
	case eop::ITE:
		return mk_ite(e->c, strengthen_assertion(e->a, offset),
		              strengthen_assertion(e->b, offset));
	default:
		return e;
	}
}

/* Scale every knob's stability radius, weakening (factor < 1) or
 * tightening (factor > 1) the stability requirement. */
inline problem_spec scale_stability(problem_spec sp, const Q &factor)
{
	if (sgn(factor) < 0)
		die("scale_stability: negative factor");
	for (var_spec &v : sp.vars) {
		if (v.rad_abs)
			v.rad_abs = *v.rad_abs * factor;
		if (v.rad_rel)
			v.rad_rel = *v.rad_rel * factor;
	}
	return sp;
}

/* "a/b.csv" or "a/b.csv.gz" -> "a/b_refined.csv" */
inline str refined_csv_path(str orig)
{
	auto strip = [&](strview suf) {
		if (orig.size() >= suf.size() &&
		    strview(orig).substr(orig.size() - suf.size()) == suf)
			orig.resize(orig.size() - suf.size());
	};
	strip(".gz");
	strip(".csv");
	return orig + "_refined.csv";
}

inline void write_refined(const str &orig_path, const dataset &d)
{
	vec<vec<str>> rows;
	for (const vec<Q> &r : d.rows) {
		vec<str> row;
		for (const Q &q : r)
			row.push_back(q_str(q));
		rows.push_back(move(row));
	}
	write_csv(refined_csv_path(orig_path), d.cols, rows);
}

} // namespace smlp

#endif
