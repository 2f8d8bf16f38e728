/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_SPEC_HH
#define SMLP_SPEC_HH

#include <smlp/infix.hh>
#include <smlp/ival.hh>
#include <smlp/jsonx.hh>

#include <algorithm>

namespace smlp {

enum class vkind { INPUT, KNOB, OUTPUT };
enum class vtype { REAL, INT };

/* one entry of the "variables" list of a problem file */
struct var_spec {

	str name;
	vkind kind = vkind::INPUT;
	vtype type = vtype::REAL;
	opt<ival> range;
	vec<Q> grid;      /* knobs only; sorted ascending, unique */
	opt<Q> rad_abs;   /* knobs only; at most one of rad_abs/rad_rel */
	opt<Q> rad_rel;

	bool integral() const { return type == vtype::INT; }
};

/* named points: witness or configuration name -> variable assignment */
using named_points = vec<pair<str,hmap<str,Q>>>;

struct problem_spec {

	str version;
	vec<var_spec> vars;
	eptr alpha, beta, eta;          /* null when absent */
	named_exprs assertions;
	named_exprs queries;
	named_exprs objectives;
	named_exprs system;             /* output name -> defining expression */
	named_points witnesses;         /* for witness certification */
	named_points configurations;    /* for configuration verification */

	const var_spec *find_var(strview name) const
	{
		for (const var_spec &v : vars)
			if (v.name == name)
				return &v;
		return NULL;
	}

	vec<str> names_of(vkind k) const
	{
		vec<str> r;
		for (const var_spec &v : vars)
			if (v.kind == k)
				r.push_back(v.name);
		return r;
	}

	vec<str> knob_names() const { return names_of(vkind::KNOB); }
	vec<str> input_names() const { return names_of(vkind::INPUT); }
	vec<str> output_names() const { return names_of(vkind::OUTPUT); }
};

/* which variables an expression may mention */
enum class slot {
	ETA,    /* knobs only */
	ALPHA,  /* inputs and knobs */
	FREE,   /* inputs, knobs and outputs */
};

inline void check_slot(const problem_spec &sp, const eptr &e, slot sl,
                       ety want, const char *what)
{
	for (const str &v : expr_vars(e)) {
		const var_spec *d = sp.find_var(v);
		if (!d)
			die("%s: unknown variable '%s'", what, v.c_str());
		bool ok;
		switch (sl) {
		case slot::ETA:
			ok = d->kind == vkind::KNOB;
			break;
		case slot::ALPHA:
			ok = d->kind != vkind::OUTPUT;
			break;
		default:
			ok = true;
			break;
		}
		if (!ok)
			die("%s: variable '%s' (%s) is not allowed here",
			    what, v.c_str(),
			    d->kind == vkind::INPUT ? "an input" :
			    d->kind == vkind::KNOB ? "a knob" : "an output");
	}
	if (expr_type(e) != want)
		die("%s: expected a %s expression, got '%s'", what,
		    want == ety::BOOL ? "boolean" : "numeric",
		    expr_str(e).c_str());
}

namespace detail {

inline var_spec parse_var_spec(const jval &j, const char *origin)
{
	if (j.k != jval::OBJ)
		die("%s: each entry of \"variables\" must be an object", origin);
	var_spec v;
	v.name = j.at("label", origin).as_str(origin);
	str ctx = str(origin) + ": variable '" + v.name + "'";
	const char *c = ctx.c_str();
	const str &itf = j.at("interface", c).as_str(c);
	if (itf == "input")
		v.kind = vkind::INPUT;
	else if (itf == "knob")
		v.kind = vkind::KNOB;
	else if (itf == "output")
		v.kind = vkind::OUTPUT;
	else
		die("%s: invalid interface '%s'", c, itf.c_str());
	const str &ty = j.at("type", c).as_str(c);
	if (ty == "real")
		v.type = vtype::REAL;
	else if (ty == "int")
		v.type = vtype::INT;
	else
		die("%s: invalid type '%s'", c, ty.c_str());
	for (const auto &[key, val] : j.obj) {
		if (key == "label" || key == "interface" || key == "type")
			continue;
		if (key == "range") {
			const vec<jval> &a = val.as_arr(c);
			if (a.size() != 2)
				die("%s: \"range\" must be [min, max]", c);
			Q lo = a[0].as_num(c), hi = a[1].as_num(c);
			if (lo > hi)
				die("%s: empty range", c);
			if (v.integral() && (!q_is_int(lo) || !q_is_int(hi)))
				die("%s: integer variable with non-integer "
				    "range bounds", c);
			v.range = ival(lo, hi);
		} else if (key == "grid") {
			if (v.kind != vkind::KNOB)
				die("%s: \"grid\" only applies to knobs", c);
			for (const jval &g : val.as_arr(c)) {
				Q q = g.as_num(c);
				if (v.integral() && !q_is_int(q))
					die("%s: integer knob with non-integer "
					    "grid value", c);
				v.grid.push_back(q);
			}
			std::sort(v.grid.begin(), v.grid.end());
			v.grid.erase(std::unique(v.grid.begin(), v.grid.end()),
			             v.grid.end());
			if (v.grid.empty())
				die("%s: empty grid", c);
		} else if (key == "rad-abs" || key == "rad-rel") {
			if (v.kind != vkind::KNOB)
				die("%s: \"%s\" only applies to knobs", c,
				    key.c_str());
			Q r = val.as_num(c);
			if (sgn(r) < 0)
				die("%s: negative radius", c);
			if (key == "rad-abs")
				v.rad_abs = r;
			else
				v.rad_rel = r;
		} else
			warn("%s: ignoring unknown key \"%s\"", c, key.c_str());
	}
	if (v.rad_abs && v.rad_rel)
		die("%s: both \"rad-abs\" and \"rad-rel\" given", c);
	if (v.range)
		for (const Q &g : v.grid)
			if (!v.range->contains(g))
				die("%s: grid value %s outside range", c,
				    q_str(g).c_str());
	return v;
}

inline named_exprs parse_named_exprs(const problem_spec &sp, const jval &j,
                                     slot sl, ety want, const str &ctx)
{
	named_exprs out;
	for (const auto &[name, val] : j.as_obj(ctx.c_str())) {
		str what = ctx + " '" + name + "'";
		eptr e = parse_expr(val.as_str(what.c_str()));
		check_slot(sp, e, sl, want, what.c_str());
		out.emplace_back(name, e);
	}
	return out;
}

inline named_points parse_named_points(const problem_spec &sp, const jval &j,
                                       bool knobs_only, const str &ctx)
{
	named_points out;
	for (const auto &[name, val] : j.as_obj(ctx.c_str())) {
		str what = ctx + " '" + name + "'";
		hmap<str,Q> pt;
		for (const auto &[var, num] : val.as_obj(what.c_str())) {
			const var_spec *d = sp.find_var(var);
			if (!d)
				die("%s: unknown variable '%s'", what.c_str(),
				    var.c_str());
			if (d->kind == vkind::OUTPUT ||
			    (knobs_only && d->kind != vkind::KNOB))
				die("%s: variable '%s' cannot be fixed here",
				    what.c_str(), var.c_str());
			pt[var] = num.as_num(what.c_str());
		}
		out.emplace_back(name, move(pt));
	}
	return out;
}

} // namespace detail

inline problem_spec parse_spec(const jval &j, const str &origin)
{
	const char *c = origin.c_str();
	if (j.k != jval::OBJ)
		die("%s: problem file must be a JSON object", c);
	problem_spec sp;
	const jval *ver = j.find("version");
	sp.version = ver ? ver->as_str(c) : str("1.2");
	const jval &vars = j.at("variables", c);
	hset<str> seen;
	for (const jval &v : vars.as_arr(c)) {
		var_spec d = detail::parse_var_spec(v, c);
		if (!seen.insert(d.name).second)
			die("%s: duplicate variable '%s'", c, d.name.c_str());
		sp.vars.push_back(move(d));
	}
	if (sp.vars.empty())
		die("%s: no variables declared", c);
	for (const auto &[key, val] : j.obj) {
		if (key == "version" || key == "variables")
			continue;
		str ctx = origin + ": " + key;
		if (key == "alpha") {
			sp.alpha = parse_expr(val.as_str(ctx.c_str()));
			check_slot(sp, sp.alpha, slot::ALPHA, ety::BOOL,
			           ctx.c_str());
		} else if (key == "beta") {
			sp.beta = parse_expr(val.as_str(ctx.c_str()));
			check_slot(sp, sp.beta, slot::FREE, ety::BOOL,
			           ctx.c_str());
		} else if (key == "eta") {
			sp.eta = parse_expr(val.as_str(ctx.c_str()));
			check_slot(sp, sp.eta, slot::ETA, ety::BOOL,
			           ctx.c_str());
		} else if (key == "assertions") {
			sp.assertions = detail::parse_named_exprs(sp, val,
				slot::FREE, ety::BOOL, ctx);
		} else if (key == "queries") {
			sp.queries = detail::parse_named_exprs(sp, val,
				slot::FREE, ety::BOOL, ctx);
		} else if (key == "objectives") {
			sp.objectives = detail::parse_named_exprs(sp, val,
				slot::FREE, ety::NUM, ctx);
		} else if (key == "system") {
			/* exact closed-form description of the modelled
			 * system, one expression per output */
			for (const auto &[out, se] : val.as_obj(ctx.c_str())) {
				const var_spec *d = sp.find_var(out);
				if (!d || d->kind != vkind::OUTPUT)
					die("%s: '%s' is not an output",
					    ctx.c_str(), out.c_str());
				str what = ctx + " '" + out + "'";
				eptr e = parse_expr(se.as_str(what.c_str()));
				check_slot(sp, e, slot::ALPHA, ety::NUM,
				           what.c_str());
				sp.system.emplace_back(out, e);
			}
		} else if (key == "witnesses") {
			sp.witnesses = detail::parse_named_points(sp, val,
				false, ctx);
		} else if (key == "configurations") {
			sp.configurations = detail::parse_named_points(sp, val,
				true, ctx);
		} else
			warn("%s: ignoring unknown key \"%s\"", c, key.c_str());
	}
	return sp;
}

inline problem_spec load_spec(const str &path)
{
	return parse_spec(load_json_file(path), path);
}

/* ----------------------------------------------------------------------
 * derived constraints
 * -------------------------------------------------------------------- */

namespace detail {

inline eptr conj2(eptr a, eptr b)
{
	if (!a)
		return b;
	if (!b)
		return a;
	return mk2(eop::AND, move(a), move(b));
}

inline eptr range_expr(const var_spec &v)
{
	if (!v.range)
		return NULL;
	eptr lo = mk2(eop::GE, mk_var(v.name), mk_cnst(v.range->lo));
	eptr hi = mk2(eop::LE, mk_var(v.name), mk_cnst(v.range->hi));
	return mk2(eop::AND, lo, hi);
}

inline eptr grid_expr(const var_spec &v)
{
	if (v.grid.empty())
		return NULL;
	eptr d;
	for (const Q &g : v.grid) {
		eptr eq = mk2(eop::EQ, mk_var(v.name), mk_cnst(g));
		d = d ? mk2(eop::OR, move(d), eq) : eq;
	}
	return d;
}

} // namespace detail

/* alpha_full: user alpha plus the declared ranges of inputs and knobs;
 * eta_full: user eta plus grid membership of gridded knobs */
inline pair<eptr,eptr> derive_domain_constraints(const problem_spec &sp)
{
	eptr alpha_full = sp.alpha, eta_full = sp.eta;
	for (const var_spec &v : sp.vars) {
		if (v.kind == vkind::OUTPUT)
			continue;
		alpha_full = detail::conj2(alpha_full, detail::range_expr(v));
		if (v.kind == vkind::KNOB)
			eta_full = detail::conj2(eta_full, detail::grid_expr(v));
	}
	if (!alpha_full)
		alpha_full = mk2(eop::EQ, mk_cnst(0), mk_cnst(0));
	if (!eta_full)
		eta_full = mk2(eop::EQ, mk_cnst(0), mk_cnst(0));
	return { alpha_full, eta_full };
}

/* stability radius of a knob around a center value: absolute, relative
 * to |center|, or zero when the knob declares no radius */
inline Q stability_radius(const var_spec &v, const Q &center)
{
	if (v.rad_abs)
		return *v.rad_abs;
	if (v.rad_rel)
		return *v.rad_rel * q_abs(center);
	return 0;
}

/* the closed ball of the stability region around a knob assignment,
 * clipped to declared ranges */
inline vec<pair<str,ival>> stability_ball(const problem_spec &sp,
                                          const hmap<str,Q> &center)
{
	vec<pair<str,ival>> ball;
	for (const var_spec &v : sp.vars) {
		if (v.kind != vkind::KNOB)
			continue;
		auto it = center.find(v.name);
		if (it == center.end())
			die("no value for knob '%s'", v.name.c_str());
		Q r = stability_radius(v, it->second);
		ival b(it->second - r, it->second + r);
		if (v.range) {
			opt<ival> cl = isect(b, *v.range);
			/* the center lies in the range, so the clip is
			 * never empty for in-range centers */
			if (cl)
				b = *cl;
		}
		ball.emplace_back(v.name, b);
	}
	return ball;
}

} // namespace smlp

#endif
