/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

/* Random generators shared by the test suites: expressions, formulas,
 * boxes, points and piecewise-linear optimization instances.  All take
 * an explicit std::mt19937_64 so every suite is reproducible. */

#ifndef SMLP_TESTS_GEN_HH
#define SMLP_TESTS_GEN_HH

#include "oracles.hh"

#include <smlp/model.hh>
#include <smlp/spec.hh>

#include <random>

namespace gen {

using smlp::Q;
using smlp::str;
using smlp::vec;
using smlp::eptr;
using smlp::fptr;
using smlp::eop;
using smlp::acmp;
using mt = std::mt19937_64;

inline long rint(mt &g, long lo, long hi)
{
	return std::uniform_int_distribution<long>(lo, hi)(g);
}

inline bool coin(mt &g, double p = 0.5)
{
	return std::uniform_real_distribution<double>(0, 1)(g) < p;
}

/* mpq_class(n, d) does not reduce the fraction on its own */
inline Q qq(long n, long d)
{
	Q r(n, d);
	r.canonicalize();
	return r;
}

/* small rational with denominator 1, 2, 4 or 8 */
inline Q rq(mt &g, long lo = -5, long hi = 5)
{
	long den = 1L << rint(g, 0, 3);
	return qq(rint(g, lo * den, hi * den), den);
}

/* random numeric expression over the given variables; 'division' adds
 * div-by-constant nodes (kept non-zero so the result stays total) */
inline eptr rnd_num(mt &g, const vec<str> &vars, int depth,
                    bool division = false);

inline eptr rnd_bool(mt &g, const vec<str> &vars, int depth)
{
	using smlp::mk1;
	using smlp::mk2;
	if (depth <= 0 || coin(g, 0.4)) {
		static const eop cmps[] = { eop::LT, eop::LE, eop::GT,
		                            eop::GE, eop::EQ, eop::NE };
		return mk2(cmps[rint(g, 0, 5)], rnd_num(g, vars, depth - 1),
		           rnd_num(g, vars, depth - 1));
	}
	switch (rint(g, 0, 3)) {
	case 0:
		return mk2(eop::AND, rnd_bool(g, vars, depth - 1),
		           rnd_bool(g, vars, depth - 1));
	case 1:
		return mk2(eop::OR, rnd_bool(g, vars, depth - 1),
		           rnd_bool(g, vars, depth - 1));
	case 2:
		return mk2(eop::XOR, rnd_bool(g, vars, depth - 1),
		           rnd_bool(g, vars, depth - 1));
	default:
		return mk1(eop::NOT, rnd_bool(g, vars, depth - 1));
	}
}

inline eptr rnd_num(mt &g, const vec<str> &vars, int depth, bool division)
{
	using smlp::mk1;
	using smlp::mk2;
	using smlp::mk_ite;
	using smlp::mk_cnst;
	using smlp::mk_var;
	if (depth <= 0 || coin(g, 0.3)) {
		if (!vars.empty() && coin(g, 0.6))
			return mk_var(vars[rint(g, 0, (long)vars.size()-1)]);
		return mk_cnst(rq(g));
	}
	switch (rint(g, 0, division ? 6 : 5)) {
	case 0:
		return mk2(eop::ADD, rnd_num(g, vars, depth-1, division),
		           rnd_num(g, vars, depth-1, division));
	case 1:
		return mk2(eop::SUB, rnd_num(g, vars, depth-1, division),
		           rnd_num(g, vars, depth-1, division));
	case 2:
		return mk2(eop::MUL, rnd_num(g, vars, depth-1, division),
		           rnd_num(g, vars, depth-1, division));
	case 3:
		return mk1(eop::NEG, rnd_num(g, vars, depth-1, division));
	case 4:
		return mk2(eop::POW, rnd_num(g, vars, depth-1, division),
		           mk_cnst(Q(rint(g, 2, 3))));
	case 5:
		return mk_ite(rnd_bool(g, vars, depth-1),
		              rnd_num(g, vars, depth-1, division),
		              rnd_num(g, vars, depth-1, division));
	default: {
		Q d = rq(g, 1, 4);
		if (sgn(d) == 0)
			d = 1;
		if (coin(g))
			d = -d;
		return mk2(eop::DIV, rnd_num(g, vars, depth-1, division),
		           mk_cnst(d));
	}
	}
}

/* polynomial term of bounded degree with small integer coefficients */
inline eptr rnd_poly(mt &g, const vec<str> &vars, int nterms)
{
	using smlp::mk2;
	using smlp::mk_cnst;
	using smlp::mk_var;
	eptr sum = mk_cnst(Q(rint(g, -3, 3)));
	for (int t = 0; t < nterms; t++) {
		eptr term = mk_cnst(qq(rint(g, -3, 3), 1L << rint(g, 0, 2)));
		int deg = (int)rint(g, 1, 2);
		for (int d = 0; d < deg; d++)
			term = mk2(eop::MUL, term,
			           mk_var(vars[rint(g, 0, (long)vars.size()-1)]));
		sum = mk2(rint(g, 0, 1) ? eop::ADD : eop::SUB, sum, term);
	}
	return sum;
}

/* random strict/non-strict inequality constraint formula over <= 3
 * variables; equality-free so the grid scan in the oracle applies */
inline fptr rnd_ineq_form(mt &g, const vec<str> &vars, int depth)
{
	using smlp::f_all;
	using smlp::f_any;
	using smlp::f_atom;
	if (depth <= 0 || coin(g, 0.45))
		return f_atom(coin(g) ? acmp::LE : acmp::LT,
		              rnd_poly(g, vars, (int)rint(g, 1, 3)));
	vec<fptr> args;
	long n = rint(g, 2, 3);
	for (long i = 0; i < n; i++)
		args.push_back(rnd_ineq_form(g, vars, depth - 1));
	return coin(g) ? f_all(move(args)) : f_any(move(args));
}

inline vec<smlp::svar> rnd_box(mt &g, size_t nvars)
{
	vec<smlp::svar> vars;
	for (size_t i = 0; i < nvars; i++) {
		Q lo(rint(g, -4, 2)), hi = lo + Q(rint(g, 1, 5));
		vars.push_back({ "v" + std::to_string(i), smlp::ival(lo, hi),
		                 coin(g, 0.3) });
	}
	return vars;
}

inline std::map<str,Q> rnd_point(mt &g, const vec<smlp::svar> &vars)
{
	std::map<str,Q> p;
	for (const smlp::svar &v : vars) {
		if (v.integral) {
			long lo = (long)smlp::q_ceil(v.dom.lo).get_si();
			long hi = (long)smlp::q_floor(v.dom.hi).get_si();
			p[v.name] = Q(rint(g, lo, hi));
		} else {
			long den = 1L << rint(g, 0, 4);
			long nlo = (long)smlp::q_ceil(v.dom.lo * den).get_si();
			long nhi = (long)smlp::q_floor(v.dom.hi * den).get_si();
			/* thin boxes may miss the lattice entirely */
			p[v.name] = nlo > nhi ? v.dom.lo
			                      : qq(rint(g, nlo, nhi), den);
		}
	}
	return p;
}

/* ------------------------------------------------------------------
 * piecewise-linear max-min optimization instances with an exactly
 * computable optimum
 * ------------------------------------------------------------------ */

/* random piecewise-linear axis on [lo,hi] with knots on the 'pitch'
 * grid; values are multiples of 1/1000 in [-1,1] */
inline oracle::pl_axis rnd_pl(mt &g, const Q &lo, const Q &hi,
                              const Q &pitch, int nknots)
{
	oracle::pl_axis a;
	a.pitch = pitch;
	Q span = hi - lo;
	Q steps = span / pitch;
	long nsteps = steps.get_num().get_si();
	vec<long> pos = { 0, nsteps };
	for (int k = 2; k < nknots; k++)
		pos.push_back(rint(g, 1, nsteps - 1));
	std::sort(pos.begin(), pos.end());
	pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
	for (long s : pos) {
		a.kx.push_back(lo + pitch * s);
		a.kv.push_back(qq(rint(g, -1000, 1000), 1000));
	}
	return a;
}

/* nested conditional expression evaluating the axis function */
inline eptr pl_expr(const oracle::pl_axis &a, const str &var)
{
	using smlp::mk2;
	using smlp::mk_ite;
	using smlp::mk_cnst;
	using smlp::mk_var;
	auto seg = [&](size_t i) {
		Q s = (a.kv[i+1] - a.kv[i]) / (a.kx[i+1] - a.kx[i]);
		return mk2(eop::ADD, mk_cnst(a.kv[i]),
		           mk2(eop::MUL, mk_cnst(s),
		               mk2(eop::SUB, mk_var(var), mk_cnst(a.kx[i]))));
	};
	eptr e = seg(a.kx.size() - 2);
	for (size_t i = a.kx.size() - 2; i-- > 0; )
		e = mk_ite(smlp::mk2(eop::LE, mk_var(var), mk_cnst(a.kx[i+1])),
		           seg(i), e);
	return e;
}

struct pl_instance {

	smlp::problem_spec sp;
	smlp::model_def model;
	smlp::dataset data;
	Q opt;          /* exact max-min optimum of the objective */
};

/* one or two continuous knobs plus one input, objective y = sum of
 * independent piecewise-linear contributions; radii are multiples of
 * the grid pitch, so the windowed scan gives the exact optimum */
inline pl_instance make_pl_instance(uint64_t seed)
{
	mt g(seed);
	Q pitch(1, 1000);
	int nknobs = 1 + (int)(seed % 2);
	pl_instance inst;
	inst.sp.version = "1.2";
	vec<oracle::pl_axis> axes;
	vec<Q> radii;
	vec<str> feats;
	eptr sum;
	for (int k = 0; k < nknobs; k++) {
		str name = "p" + std::to_string(k + 1);
		smlp::var_spec v;
		v.name = name;
		v.kind = smlp::vkind::KNOB;
		v.type = smlp::vtype::REAL;
		v.range = smlp::ival(Q(0), Q(1));
		Q r = qq(rint(g, 0, 80), 1000); /* 0 .. 0.08, on the grid */
		v.rad_abs = r;
		inst.sp.vars.push_back(v);
		feats.push_back(name);
		oracle::pl_axis a = rnd_pl(g, Q(0), Q(1), pitch,
		                           (int)rint(g, 3, 5));
		eptr e = pl_expr(a, name);
		sum = sum ? smlp::mk2(eop::ADD, sum, e) : e;
		axes.push_back(move(a));
		radii.push_back(r);
	}
	{
		smlp::var_spec v;
		v.name = "x";
		v.kind = smlp::vkind::INPUT;
		v.type = smlp::vtype::REAL;
		v.range = smlp::ival(Q(0), Q(1));
		inst.sp.vars.push_back(v);
		feats.push_back("x");
		oracle::pl_axis a = rnd_pl(g, Q(0), Q(1), pitch,
		                           (int)rint(g, 2, 4));
		sum = smlp::mk2(eop::ADD, sum, pl_expr(a, "x"));
		axes.push_back(move(a));
	}
	{
		smlp::var_spec v;
		v.name = "y";
		v.kind = smlp::vkind::OUTPUT;
		v.type = smlp::vtype::REAL;
		inst.sp.vars.push_back(v);
	}
	inst.sp.objectives.push_back({ "objv", smlp::mk_var("y") });
	inst.model = smlp::expression_model(feats, { { "y", sum } });
	/* two data rows pinning the objective scale to [0,1] */
	inst.data.cols = feats;
	inst.data.cols.push_back("y");
	vec<Q> r0(feats.size(), Q(0)), r1(feats.size(), Q(1));
	r0.push_back(Q(0));
	r1.push_back(Q(1));
	inst.data.rows = { r0, r1 };
	inst.opt = 0;
	for (size_t k = 0; k + 1 < axes.size(); k++)
		inst.opt += oracle::axis_maxmin(axes[k], radii[k]);
	inst.opt += oracle::axis_min(axes.back());
	return inst;
}

} // namespace gen

#endif
