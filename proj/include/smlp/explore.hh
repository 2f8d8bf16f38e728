/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_EXPLORE_HH
#define SMLP_EXPLORE_HH

#include <smlp/model.hh>
#include <smlp/solver.hh>
#include <smlp/spec.hh>

#include <nlohmann/json.hpp>

namespace smlp {

using ojson = nlohmann::ordered_json;

/* ----------------------------------------------------------------------
 * a problem instance ready for the solver: spec + model + derived
 * constraint formulas
 * -------------------------------------------------------------------- */

struct gear_instance {

	problem_spec sp;
	model_def model;
	opt<model_def> system; /* exact system, when the spec describes one */

	eptr alpha_full_e, eta_full_e;
	fptr alpha_full, eta_full, fmodel;

	vec<var_spec> knobs, inputs; /* declaration order */
	solver_cfg scfg;
};

struct explore_opts {

	Q epsilon = Q(1, 20);
	Q delta_rel = Q(0);       /* > 0: solver tolerance for optimization */
	bool pareto = false;
	bool with_assertions = false; /* optimization also maintains them */
	int max_exclusion_rounds = 64;
	int max_trials = 400;
	int max_jumps = 8;
};

inline ival domain_of(const var_spec &v)
{
	if (v.range)
		return *v.range;
	if (!v.grid.empty())
		return ival(v.grid.front(), v.grid.back());
	die("variable '%s' needs a bounded range for exploration",
	    v.name.c_str());
}

inline gear_instance build_instance(problem_spec sp, model_def model,
                                    opt<model_def> system,
                                    const solver_cfg &scfg)
{
	gear_instance gi;
	gi.sp = move(sp);
	gi.model = move(model);
	gi.system = move(system);
	gi.scfg = scfg;
	for (const var_spec &v : gi.sp.vars)
		if (v.kind == vkind::KNOB)
			gi.knobs.push_back(v);
		else if (v.kind == vkind::INPUT)
			gi.inputs.push_back(v);
	for (const str &f : gi.model.features) {
		const var_spec *d = gi.sp.find_var(f);
		if (!d || d->kind == vkind::OUTPUT)
			die("model feature '%s' is not an input or knob of "
			    "the problem", f.c_str());
	}
	for (const str &o : gi.model.outputs) {
		const var_spec *d = gi.sp.find_var(o);
		if (!d || d->kind != vkind::OUTPUT)
			die("model output '%s' is not declared as an output",
			    o.c_str());
	}
	auto [af, ef] = derive_domain_constraints(gi.sp);
	gi.alpha_full_e = af;
	gi.eta_full_e = ef;
	gi.alpha_full = formula_of(af);
	gi.eta_full = formula_of(ef);
	gi.fmodel = model_formula(gi.model);
	return gi;
}

namespace detail {

/* solver variables for one check: knobs (optionally confined to a
 * ball), then inputs (optionally fixed), then model outputs bounded by
 * interval evaluation over the resulting feature box */
struct check_space {

	vec<svar> vars;
	bool with_outputs = true;
};

inline check_space make_space(const gear_instance &gi,
                              const vec<pair<str,ival>> *knob_boxes,
                              const hmap<str,Q> *fixed_inputs,
                              bool with_outputs)
{
	check_space cs;
	cs.with_outputs = with_outputs;
	hmap<str,ival> kb;
	if (knob_boxes)
		for (const auto &[n, b] : *knob_boxes)
			kb[n] = b;
	vec<pair<str,ival>> feat_box;
	for (const var_spec &v : gi.knobs) {
		ival b = knob_boxes ? kb.at(v.name) : domain_of(v);
		/* a box fixed from outside may sit between integer points;
		 * integrality only prunes genuine search ranges */
		bool integral = v.integral() && !(knob_boxes && b.is_point());
		cs.vars.push_back({ v.name, b, integral });
		feat_box.emplace_back(v.name, b);
	}
	for (const var_spec &v : gi.inputs) {
		ival b = fixed_inputs ? ival(fixed_inputs->at(v.name))
		                      : domain_of(v);
		bool integral = v.integral() && !fixed_inputs;
		cs.vars.push_back({ v.name, b, integral });
		feat_box.emplace_back(v.name, b);
	}
	if (with_outputs) {
		vec<pair<str,ival>> fb;
		for (const str &f : gi.model.features)
			for (const auto &[n, b] : feat_box)
				if (n == f)
					fb.emplace_back(n, b);
		for (auto &[n, b] : output_ranges(gi.model, fb,
		                                  gi.scfg.delta))
			cs.vars.push_back({ n, b, false });
	}
	return cs;
}

/* tri-state helpers: +1 yes, 0 no, -1 unknown */
inline ojson bstr(int tri)
{
	return tri > 0 ? "true" : tri == 0 ? "false" : "unknown";
}

inline int of_sat(const sat_result &r)
{
	switch (r.status) {
	case sat_status::SAT: return 1;
	case sat_status::UNSAT: return 0;
	default: return -1;
	}
}

struct globals {
	int interface_c = -1;
	int model_c = -1;
};

inline globals check_globals(const gear_instance &gi)
{
	globals g;
	check_space cs0 = make_space(gi, NULL, NULL, false);
	g.interface_c = of_sat(check_sat(cs0.vars,
		f_all({ gi.eta_full, gi.alpha_full }), gi.scfg));
	if (g.interface_c <= 0) {
		g.model_c = g.interface_c;
		return g;
	}
	check_space cs1 = make_space(gi, NULL, NULL, true);
	g.model_c = of_sat(check_sat(cs1.vars,
		f_all({ gi.eta_full, gi.alpha_full, gi.fmodel }), gi.scfg));
	return g;
}

/* fill in knobs/inputs a point omits, when the spec pins them down */
inline hmap<str,Q> complete_point(const gear_instance &gi,
                                  const hmap<str,Q> &pt, bool with_inputs,
                                  const str &what)
{
	hmap<str,Q> full = pt;
	auto need = [&](const var_spec &v) {
		if (full.count(v.name))
			return;
		if (v.grid.size() == 1) {
			full[v.name] = v.grid[0];
			return;
		}
		if (v.range && v.range->is_point()) {
			full[v.name] = v.range->lo;
			return;
		}
		die("%s: no value for '%s' and it cannot be inferred",
		    what.c_str(), v.name.c_str());
	};
	for (const var_spec &v : gi.knobs)
		need(v);
	if (with_inputs)
		for (const var_spec &v : gi.inputs)
			need(v);
	return full;
}

inline hmap<str,Q> knob_part(const gear_instance &gi, const hmap<str,Q> &pt)
{
	hmap<str,Q> k;
	for (const var_spec &v : gi.knobs)
		k[v.name] = pt.at(v.name);
	return k;
}

inline hmap<str,Q> input_part(const gear_instance &gi, const hmap<str,Q> &pt)
{
	hmap<str,Q> x;
	for (const var_spec &v : gi.inputs)
		x[v.name] = pt.at(v.name);
	return x;
}

/* the check behind "stable": no point of the stability region around
 * the knob assignment satisfies the negated condition */
inline sat_result stability_query(const gear_instance &gi,
                                  const hmap<str,Q> &knob_center,
                                  const hmap<str,Q> *fixed_inputs,
                                  const fptr &neg_payload)
{
	vec<pair<str,ival>> ball = stability_ball(gi.sp, knob_center);
	check_space cs = make_space(gi, &ball, fixed_inputs, true);
	fptr f = f_all({ gi.alpha_full, gi.fmodel, neg_payload });
	return check_sat(cs.vars, f, gi.scfg);
}

/* region around a failed candidate that the search will not revisit:
 * some knob leaves the stability ball (radii floored by delta so the
 * region has volume) */
inline fptr exclusion_of(const gear_instance &gi,
                         const hmap<str,Q> &knob_center)
{
	vec<fptr> outside;
	for (const var_spec &v : gi.knobs) {
		const Q &c = knob_center.at(v.name);
		Q r = stability_radius(v, c);
		if (r < gi.scfg.delta)
			r = gi.scfg.delta;
		/* p <= c - r  or  p >= c + r */
		outside.push_back(f_atom(acmp::LE,
			mk2(eop::SUB, mk_var(v.name), mk_cnst(c - r))));
		outside.push_back(f_atom(acmp::LE,
			mk2(eop::SUB, mk_cnst(c + r), mk_var(v.name))));
	}
	return f_any(move(outside));
}

struct gear_outcome {

	enum { STABLE, NONE, UNDECIDED } k = UNDECIDED;
	hmap<str,Q> point; /* STABLE: full candidate (knobs, inputs, outputs) */
	bool feasible = false; /* the unexcluded search had a candidate */
	str reason;
};

/* candidate-exclusion loop: find a candidate of the payload, keep it if
 * its stability region validates, otherwise rule out the neighborhood
 * and repeat */
inline gear_outcome gear_sat(const gear_instance &gi, const fptr &payload,
                             const fptr &neg_payload, bool inputs_fixed,
                             const explore_opts &opts)
{
	gear_outcome out;
	vec<fptr> conj = { gi.eta_full, gi.alpha_full, gi.fmodel, payload };
	check_space cs = make_space(gi, NULL, NULL, true);
	/* every stability counterexample input x^ also yields a lemma for
	 * the candidate search: the candidate's own condition must hold at
	 * x^ (the ball contains its center).  Exact for total models; with
	 * partial terms (division) only the ball exclusions apply. */
	bool lemma_ok = !inputs_fixed && !gi.inputs.empty() &&
	                form_total(gi.fmodel) && form_total(payload) &&
	                form_total(gi.alpha_full);
	hmap<str,ival> ydom;
	for (const svar &sv : cs.vars)
		ydom[sv.name] = sv.dom;
	vec<fptr> lemmas; /* sound refutations, unlike the ball exclusions */
	for (int round = 0; round < opts.max_exclusion_rounds; round++) {
		vec<fptr> all = conj;
		all.insert(all.end(), lemmas.begin(), lemmas.end());
		sat_result cand = check_sat(cs.vars, f_all(all), gi.scfg);
		if (cand.status == sat_status::UNSAT && lemma_ok &&
		    conj.size() > 4) {
			/* the ball exclusions are heuristic; a conclusive
			 * "none" needs the lemma-only formula unsatisfiable */
			vec<fptr> sound = { gi.eta_full, gi.alpha_full,
			                    gi.fmodel, payload };
			sound.insert(sound.end(), lemmas.begin(),
			             lemmas.end());
			cand = check_sat(cs.vars, f_all(sound), gi.scfg);
		}
		if (cand.status == sat_status::UNSAT) {
			out.k = gear_outcome::NONE;
			return out;
		}
		if (cand.status == sat_status::UNKNOWN) {
			out.k = gear_outcome::UNDECIDED;
			out.reason = cand.reason;
			return out;
		}
		out.feasible = true;
		hmap<str,Q> kc = knob_part(gi, cand.witness);
		hmap<str,Q> xc = input_part(gi, cand.witness);
		sat_result st = stability_query(gi, kc,
			inputs_fixed ? &xc : NULL, neg_payload);
		if (st.status == sat_status::UNSAT) {
			out.k = gear_outcome::STABLE;
			out.point = move(cand.witness);
			return out;
		}
		if (st.status == sat_status::UNKNOWN) {
			out.k = gear_outcome::UNDECIDED;
			out.reason = st.reason;
			return out;
		}
		conj.push_back(exclusion_of(gi, kc));
		if (lemma_ok) {
			hmap<str,eptr> sub;
			for (const var_spec &v : gi.inputs)
				sub[v.name] =
					mk_cnst(st.witness.at(v.name));
			str suf = "!" + std::to_string(round);
			for (const str &o : gi.model.outputs) {
				str fresh = o + suf;
				cs.vars.push_back({ fresh, ydom.at(o),
				                    false });
				sub[o] = mk_var(fresh);
			}
			lemmas.push_back(f_any({
				f_not(form_subst(gi.alpha_full, sub)),
				f_all({ form_subst(gi.fmodel, sub),
				        form_subst(payload, sub) }) }));
		}
	}
	out.k = gear_outcome::UNDECIDED;
	out.reason = "exclusion rounds exhausted";
	return out;
}

/* conjunction of the named constraint expressions */
inline fptr all_of(const named_exprs &es)
{
	vec<fptr> c;
	for (const auto &[n, e] : es)
		c.push_back(formula_of(e));
	return f_all(move(c));
}

inline ojson point_json(const gear_instance &gi, const hmap<str,Q> &pt)
{
	ojson o = ojson::object();
	for (const var_spec &v : gi.sp.vars) {
		auto it = pt.find(v.name);
		if (it != pt.end())
			o[v.name] = q_dbl(it->second);
	}
	return o;
}

} // namespace detail

/* ----------------------------------------------------------------------
 * certify: validate given (knob, input) witnesses for each query
 * -------------------------------------------------------------------- */

inline ojson run_certify(const gear_instance &gi, const named_exprs &queries,
                         const named_points &witnesses,
                         const explore_opts &opts)
{
	using namespace detail;
	(void)opts;
	globals g = check_globals(gi);
	ojson rep = ojson::object();
	hmap<str,hmap<str,Q>> wmap;
	for (const auto &[n, p] : witnesses)
		wmap[n] = p;
	for (const auto &[qname, qexpr] : queries) {
		auto wit = wmap.find(qname);
		if (wit == wmap.end())
			die("no witness given for query '%s'", qname.c_str());
		hmap<str,Q> w = complete_point(gi, wit->second, true,
			"witness for '" + qname + "'");
		ojson item = ojson::object();
		int consistent, feasible = 0, stable = 0;
		str status;
		if (g.interface_c < 0 || g.model_c < 0) {
			consistent = -1;
			feasible = stable = -1;
			status = "UNKNOWN";
		} else if (g.interface_c == 0 || g.model_c == 0) {
			consistent = 0;
			status = "ERROR";
		} else {
			consistent = eval_bool(gi.alpha_full_e, w) &&
			             eval_bool(gi.eta_full_e, w) ? 1 : 0;
			if (!consistent)
				status = "ERROR";
			else {
				hmap<str,Q> wy = w;
				for (auto &[n, v] : eval_model(gi.model, w))
					wy[n] = v;
				feasible = eval_bool(qexpr, wy) ? 1 : 0;
				if (!feasible) {
					status = "FAIL";
				} else {
					hmap<str,Q> kc = knob_part(gi, w);
					hmap<str,Q> xc = input_part(gi, w);
					sat_result st = stability_query(gi,
						kc, &xc,
						f_not(formula_of(qexpr)));
					switch (st.status) {
					case sat_status::UNSAT:
						stable = 1;
						status = "PASS";
						break;
					case sat_status::SAT:
						stable = 0;
						status = "FAIL";
						break;
					default:
						stable = -1;
						status = "UNKNOWN";
						break;
					}
				}
			}
		}
		item["witness_consistent"] = bstr(consistent);
		item["witness_feasible"] = bstr(feasible);
		item["witness_stable"] = bstr(stable);
		item["witness_status"] = status;
		rep[qname] = move(item);
	}
	rep["smlp_execution"] = "completed";
	rep["interface_consistent"] = bstr(g.interface_c);
	rep["model_consistent"] = bstr(g.model_c);
	return rep;
}

/* ----------------------------------------------------------------------
 * query: search for a stable solution of each query
 * -------------------------------------------------------------------- */

inline ojson run_query(const gear_instance &gi, const named_exprs &queries,
                       const explore_opts &opts)
{
	using namespace detail;
	globals g = check_globals(gi);
	ojson rep = ojson::object();
	rep["smlp_execution"] = "completed";
	rep["interface_consistent"] = bstr(g.interface_c);
	for (const auto &[qname, qexpr] : queries) {
		ojson item = ojson::object();
		if (g.interface_c <= 0 || g.model_c <= 0) {
			int tri = std::min(g.interface_c, g.model_c);
			item["query_feasible"] = bstr(tri < 0 ? -1 : 0);
			item["query_stable"] = bstr(tri < 0 ? -1 : 0);
			item["query_status"] = tri < 0 ? "UNKNOWN" : "ERROR";
			item["query_result"] = nullptr;
			rep[qname] = move(item);
			continue;
		}
		fptr qf = formula_of(qexpr);
		gear_outcome oc = gear_sat(gi, qf, f_not(qf), true, opts);
		switch (oc.k) {
		case gear_outcome::STABLE: {
			item["query_feasible"] = bstr(1);
			item["query_stable"] = bstr(1);
			item["query_status"] = "PASS";
			/* report the configuration with its exact model
			 * responses */
			hmap<str,Q> res = oc.point;
			for (auto &[n, v] : eval_model(gi.model, oc.point))
				res[n] = v;
			ojson r = ojson::object();
			for (const var_spec &v : gi.sp.vars) {
				if (v.kind == vkind::INPUT)
					continue;
				r[v.name] = q_dbl(res.at(v.name));
			}
			item["query_result"] = move(r);
			break;
		}
		case gear_outcome::NONE:
			item["query_feasible"] = bstr(oc.feasible ? 1 : 0);
			item["query_stable"] = bstr(0);
			item["query_status"] = "FAIL";
			item["query_result"] = nullptr;
			break;
		default:
			item["query_feasible"] = bstr(oc.feasible ? 1 : -1);
			item["query_stable"] = bstr(-1);
			item["query_status"] = "UNKNOWN";
			item["query_result"] = nullptr;
			break;
		}
		rep[qname] = move(item);
	}
	rep["model_consistent"] = bstr(g.model_c);
	return rep;
}

/* ----------------------------------------------------------------------
 * verify: check each assertion for a fixed knob configuration
 * -------------------------------------------------------------------- */

inline ojson run_verify(const gear_instance &gi, const named_exprs &asserts,
                        const named_points &configs,
                        const explore_opts &opts)
{
	using namespace detail;
	(void)opts;
	globals g = check_globals(gi);
	ojson rep = ojson::object();
	hmap<str,hmap<str,Q>> cmap;
	for (const auto &[n, p] : configs)
		cmap[n] = p;
	for (const auto &[aname, aexpr] : asserts) {
		/* named configuration, else inference from point ranges
		 * and singleton grids (complete_point dies otherwise) */
		auto cit = cmap.find(aname);
		static const hmap<str,Q> none;
		hmap<str,Q> conf = complete_point(gi,
			cit == cmap.end() ? none : cit->second, false,
			"configuration for '" + aname + "'");
		ojson item = ojson::object();
		int consistent, feasible = 0;
		str status;
		ojson counter = nullptr;
		if (g.interface_c < 0 || g.model_c < 0) {
			consistent = feasible = -1;
			status = "UNKNOWN";
		} else if (g.interface_c == 0 || g.model_c == 0) {
			consistent = 0;
			status = "ERROR";
		} else if (!eval_bool(gi.eta_full_e, conf)) {
			/* the configuration itself violates eta */
			consistent = 0;
			status = "ERROR";
		} else {
			/* some admissible input must reach the model */
			vec<pair<str,ival>> kb;
			for (const var_spec &v : gi.knobs)
				kb.emplace_back(v.name,
					ival(conf.at(v.name)));
			check_space csp = make_space(gi, &kb, NULL, true);
			sat_result con = check_sat(csp.vars,
				f_all({ gi.alpha_full, gi.fmodel }), gi.scfg);
			consistent = of_sat(con);
			if (consistent < 0)
				status = "UNKNOWN";
			else if (!consistent)
				status = "ERROR";
			else {
				fptr af = formula_of(aexpr);
				sat_result fea = check_sat(csp.vars,
					f_all({ gi.alpha_full, gi.fmodel, af }),
					gi.scfg);
				feasible = of_sat(fea);
				if (feasible == 0) {
					status = "FAIL";
				} else if (feasible < 0) {
					status = "UNKNOWN";
				} else {
					sat_result st = stability_query(gi,
						knob_part(gi, conf), NULL,
						f_not(af));
					switch (st.status) {
					case sat_status::UNSAT:
						status = "PASS";
						break;
					case sat_status::SAT:
						status = "FAIL";
						counter = point_json(gi,
							st.witness);
						break;
					default:
						status = "UNKNOWN";
						break;
					}
				}
			}
		}
		item["configuration_consistent"] = bstr(consistent);
		item["assertion_status"] = status;
		item["counter_example"] = move(counter);
		item["assertion_feasible"] = bstr(feasible);
		rep[aname] = move(item);
	}
	rep["smlp_execution"] = "completed";
	rep["interface_consistent"] = bstr(g.interface_c);
	rep["model_consistent"] = bstr(g.model_c);
	return rep;
}

/* ----------------------------------------------------------------------
 * synthesize: find a stable configuration meeting beta and the
 * assertions
 * -------------------------------------------------------------------- */

inline ojson run_synthesize(const gear_instance &gi,
                            const named_exprs &asserts,
                            const explore_opts &opts)
{
	using namespace detail;
	globals g = check_globals(gi);
	ojson rep = ojson::object();
	rep["smlp_execution"] = "completed";
	rep["interface_consistent"] = bstr(g.interface_c);
	rep["model_consistent"] = bstr(g.model_c);
	vec<fptr> payload_c;
	if (gi.sp.beta)
		payload_c.push_back(formula_of(gi.sp.beta));
	payload_c.push_back(all_of(asserts));
	fptr payload = f_all(move(payload_c));
	if (g.interface_c <= 0 || g.model_c <= 0) {
		int tri = std::min(g.interface_c, g.model_c);
		rep["configuration_feasible"] = bstr(tri < 0 ? -1 : 0);
		rep["configuration_stable"] = bstr(tri < 0 ? -1 : 0);
		rep["synthesis_status"] = tri < 0 ? "UNKNOWN" : "ERROR";
		rep["synthesis_result"] = nullptr;
		return rep;
	}
	gear_outcome oc = gear_sat(gi, payload, f_not(payload), false, opts);
	switch (oc.k) {
	case gear_outcome::STABLE: {
		rep["configuration_feasible"] = bstr(1);
		rep["configuration_stable"] = bstr(1);
		rep["synthesis_status"] = "PASS";
		ojson r = ojson::object();
		for (const var_spec &v : gi.knobs)
			r[v.name] = q_dbl(oc.point.at(v.name));
		rep["synthesis_result"] = move(r);
		break;
	}
	case gear_outcome::NONE:
		rep["configuration_feasible"] = bstr(oc.feasible ? 1 : 0);
		rep["configuration_stable"] = bstr(0);
		rep["synthesis_status"] = "FAIL";
		rep["synthesis_result"] = nullptr;
		break;
	default:
		rep["configuration_feasible"] = bstr(oc.feasible ? 1 : -1);
		rep["configuration_stable"] = bstr(-1);
		rep["synthesis_status"] = "UNKNOWN";
		rep["synthesis_result"] = nullptr;
		break;
	}
	return rep;
}

/* ----------------------------------------------------------------------
 * optimize / optsyn: maximal stable thresholds on the objectives
 * -------------------------------------------------------------------- */

struct optimize_result {

	ojson report;
	vec<str> progress_cols;
	vec<vec<str>> progress_csv;
	ojson progress_json = ojson::array();
};

namespace detail {

struct obj_search {

	str name;
	eptr raw;        /* as given */
	eptr scaled;     /* affine rescale: data min -> 0, data max -> 1 */
	Q dmin, dmax;    /* data range of the raw objective */
	opt<Q> lo, up;   /* proven threshold bracket, scaled space */

	Q unscale(const Q &z) const { return z * (dmax - dmin) + dmin; }
};

struct optimizer {

	const gear_instance &gi;
	const explore_opts &opts;
	fptr base_payload;           /* beta (and assertions for optsyn) */
	vec<obj_search> objs;
	hmap<str,Q> config;          /* current best stable candidate */
	bool have_config = false;
	int iteration = 0;
	long trials = 0;
	optimize_result *out;

	Q scaled_value(const obj_search &o, const hmap<str,Q> &pt) const
	{
		hmap<str,Q> full = pt;
		for (auto &[n, v] : eval_model(gi.model, pt))
			full[n] = v;
		return eval_num(o.scaled, full);
	}

	fptr threshold_payload(size_t active, const opt<Q> &z) const
	{
		vec<fptr> c = { base_payload };
		for (size_t j = 0; j < objs.size(); j++) {
			opt<Q> t = j == active ? z : objs[j].lo;
			if (!opts.pareto && j != active)
				t = std::nullopt;
			if (!t)
				continue;
			/* scaled_j >= t  <=>  t - scaled_j <= 0 */
			c.push_back(f_atom(acmp::LE,
				mk2(eop::SUB, mk_cnst(*t), objs[j].scaled)));
		}
		return f_all(move(c));
	}

	/* thresholds for the confirming run at the end: all proven bounds
	 * jointly in pareto mode, otherwise the last objective's */
	fptr final_payload() const
	{
		vec<fptr> c = { base_payload };
		for (size_t j = 0; j < objs.size(); j++) {
			if (!opts.pareto && j+1 != objs.size())
				continue;
			if (!objs[j].lo)
				continue;
			c.push_back(f_atom(acmp::LE,
				mk2(eop::SUB, mk_cnst(*objs[j].lo),
				    objs[j].scaled)));
		}
		return f_all(move(c));
	}

	/* one stable-synthesis attempt at threshold z on objective j */
	gear_outcome trial(size_t j, const opt<Q> &z)
	{
		trials++;
		fptr p = threshold_payload(j, z);
		return gear_sat(gi, p, f_not(p), false, opts);
	}

	void progress_row()
	{
		iteration++;
		vec<str> csv;
		ojson row = ojson::object();
		csv.push_back(std::to_string(iteration));
		row["iteration"] = iteration;
		for (const obj_search &o : objs) {
			auto put = [&](const str &key, const opt<Q> &v) {
				if (v) {
					csv.push_back(dbl_str(q_dbl(*v)));
					row[key] = q_dbl(*v);
				} else {
					csv.push_back("");
					row[key] = nullptr;
				}
			};
			put(o.name + "_lo_scaled", o.lo);
			put(o.name + "_up_scaled", o.up);
			put(o.name + "_lo",
			    o.lo ? opt<Q>(o.unscale(*o.lo)) : std::nullopt);
			put(o.name + "_up",
			    o.up ? opt<Q>(o.unscale(*o.up)) : std::nullopt);
		}
		hmap<str,Q> outs;
		if (have_config)
			outs = eval_model(gi.model, config);
		for (const var_spec &v : gi.knobs) {
			if (have_config) {
				double d = q_dbl(config.at(v.name));
				csv.push_back(dbl_str(d));
				row[v.name] = d;
			} else {
				csv.push_back("");
				row[v.name] = nullptr;
			}
		}
		for (const str &o : gi.model.outputs) {
			if (have_config) {
				double d = q_dbl(outs.at(o));
				csv.push_back(dbl_str(d));
				row[o] = d;
			} else {
				csv.push_back("");
				row[o] = nullptr;
			}
		}
		out->progress_csv.push_back(move(csv));
		out->progress_json.push_back(move(row));
	}

	/* accept a successful trial: update the bracket, record progress,
	 * and retry at the exact achieved value to pull lo up fast */
	void accept(size_t j, const Q &z, gear_outcome &&oc)
	{
		obj_search &o = objs[j];
		config = move(oc.point);
		have_config = true;
		o.lo = z;
		progress_row();
		for (int k = 0; k < opts.max_jumps; k++) {
			Q v = scaled_value(o, config);
			if (!(v > *o.lo) || (o.up && !(v < *o.up)))
				break;
			gear_outcome joc = trial(j, v);
			if (joc.k == gear_outcome::NONE &&
			    (!o.up || v < *o.up))
				o.up = v;
			if (joc.k != gear_outcome::STABLE)
				break;
			config = move(joc.point);
			o.lo = v;
			progress_row();
		}
	}

	/* establish an initial lower bound for objective j */
	bool seed(size_t j, const Q &hint)
	{
		obj_search &o = objs[j];
		Q z = hint;
		Q step = opts.epsilon;
		/* conceivable scaled range, from the model enclosure */
		check_space cs = make_space(gi, NULL, NULL, true);
		hmap<str,xiv> env;
		for (const svar &v : cs.vars)
			env[v.name] = xiv(v.dom);
		opt<xiv> ob = interval_eval(o.scaled, env);
		Q floor_z = ob && ob->lo ? *ob->lo - 1 : hint - 1000000;
		if (!o.up && ob && ob->hi)
			/* no point can score above the enclosure, so this
			 * upper bound needs no trial */
			o.up = *ob->hi + 2 * gi.scfg.delta;
		for (int k = 0; k < opts.max_trials; k++) {
			gear_outcome oc = trial(j, z);
			if (oc.k == gear_outcome::STABLE) {
				accept(j, z, move(oc));
				return true;
			}
			if (oc.k == gear_outcome::UNDECIDED)
				return false;
			if (!o.up || z < *o.up)
				o.up = z;
			if (z < floor_z)
				return false; /* nothing is stable */
			z -= step;
			step *= 2;
		}
		return false;
	}

	/* binary search between the established bounds */
	void bisect(size_t j)
	{
		obj_search &o = objs[j];
		while (o.lo && o.up && *o.up - *o.lo > opts.epsilon &&
		       trials < opts.max_trials) {
			Q z = (*o.lo + *o.up) / 2;
			gear_outcome oc = trial(j, z);
			if (oc.k == gear_outcome::STABLE)
				accept(j, z, move(oc));
			else if (oc.k == gear_outcome::NONE)
				o.up = z;
			else
				return; /* leave the bracket as proven */
		}
	}
};

} // namespace detail

inline optimize_result run_optimize(const gear_instance &gi,
                                    const named_exprs &asserts,
                                    const named_exprs &objectives,
                                    const dataset &data,
                                    const explore_opts &opts)
{
	using namespace detail;
	optimize_result out;
	if (objectives.empty())
		die("optimization needs at least one objective");
	globals g = check_globals(gi);
	optimizer oz{ gi, opts, nullptr, {}, {}, false, 0, 0, &out };
	vec<fptr> base = {};
	if (gi.sp.beta)
		base.push_back(formula_of(gi.sp.beta));
	if (opts.with_assertions)
		base.push_back(all_of(asserts));
	oz.base_payload = f_all(move(base));
	vec<pair<Q,Q>> bounds = objective_bounds(data, objectives);
	for (size_t j = 0; j < objectives.size(); j++) {
		obj_search o;
		o.name = objectives[j].first;
		o.raw = objectives[j].second;
		o.dmin = bounds[j].first;
		o.dmax = bounds[j].second;
		if (o.dmin == o.dmax) {
			/* degenerate scaling: constant objective, the
			 * threshold stays pinned at the data value */
			o.scaled = mk_cnst(Q(0));
		} else {
			o.scaled = mk2(eop::DIV,
				mk2(eop::SUB, o.raw, mk_cnst(o.dmin)),
				mk_cnst(o.dmax - o.dmin));
		}
		oz.objs.push_back(move(o));
	}
	/* progress table layout */
	out.progress_cols.push_back("iteration");
	for (const obj_search &o : oz.objs) {
		out.progress_cols.push_back(o.name + "_lo_scaled");
		out.progress_cols.push_back(o.name + "_up_scaled");
		out.progress_cols.push_back(o.name + "_lo");
		out.progress_cols.push_back(o.name + "_up");
	}
	for (const var_spec &v : gi.knobs)
		out.progress_cols.push_back(v.name);
	for (const str &o : gi.model.outputs)
		out.progress_cols.push_back(o);

	int synthesis_feasible = -1;
	if (g.interface_c <= 0 || g.model_c <= 0) {
		synthesis_feasible = std::min(g.interface_c, g.model_c);
	} else {
		/* threshold-free stable synthesis seeds the search */
		gear_outcome oc0 = gear_sat(gi, oz.base_payload,
			f_not(oz.base_payload), false, opts);
		synthesis_feasible =
			oc0.k == gear_outcome::STABLE ? 1 :
			oc0.k == gear_outcome::NONE
				? (oc0.feasible ? 1 : 0) : -1;
		if (oc0.k == gear_outcome::STABLE) {
			oz.config = oc0.point;
			oz.have_config = true;
			for (size_t j = 0; j < oz.objs.size(); j++) {
				Q hint = oz.scaled_value(oz.objs[j],
				                         oc0.point);
				if (oz.seed(j, hint))
					oz.bisect(j);
			}
			if (opts.pareto && oz.objs.size() > 1) {
				/* extra rounds with the other thresholds
				 * held at their proven values */
				for (int cycle = 0; cycle < 3; cycle++) {
					bool improved = false;
					for (size_t j = 0; j < oz.objs.size();
					     j++) {
						opt<Q> before = oz.objs[j].lo;
						oz.bisect(j);
						if (oz.objs[j].lo && before &&
						    *oz.objs[j].lo - *before >
						    opts.epsilon)
							improved = true;
					}
					if (!improved)
						break;
				}
			}
			/* one confirming run at the final thresholds */
			fptr fin = oz.final_payload();
			gear_outcome fo = gear_sat(gi, fin, f_not(fin),
			                           false, opts);
			if (fo.k == gear_outcome::STABLE) {
				oz.config = move(fo.point);
				oz.have_config = true;
			}
		}
	}

	/* report, mirroring the result layout of the reference runs */
	ojson rep = ojson::object();
	hmap<str,Q> outs;
	if (oz.have_config)
		outs = eval_model(gi.model, oz.config);
	auto full_config = [&]() {
		hmap<str,Q> full = oz.config;
		for (const auto &[n, v] : outs)
			full[n] = v;
		return full;
	};
	for (obj_search &o : oz.objs) {
		ojson oo = ojson::object();
		if (oz.have_config)
			oo["value_in_config"] =
				q_dbl(eval_num(o.raw, full_config()));
		else
			oo["value_in_config"] = nullptr;
		oo["threshold_scaled"] = o.lo ? ojson(q_dbl(*o.lo)) : ojson();
		oo["threshold"] = o.lo ? ojson(q_dbl(o.unscale(*o.lo)))
		                       : ojson();
		oo["max_in_data"] = q_dbl(o.dmax);
		oo["min_in_data"] = q_dbl(o.dmin);
		rep[o.name] = move(oo);
	}
	for (const str &y : gi.model.outputs) {
		ojson yo = ojson::object();
		yo["value_in_config"] = oz.have_config
			? ojson(q_dbl(outs.at(y))) : ojson();
		if (gi.system) {
			if (oz.have_config) {
				hmap<str,Q> sysout = eval_model(*gi.system,
				                                oz.config);
				const Q &v = sysout.at(y);
				if (q_is_int(v) &&
				    v.get_num().fits_slong_p())
					yo["value_in_system"] =
						(long long)v.get_num().get_si();
				else
					yo["value_in_system"] = q_dbl(v);
			} else
				yo["value_in_system"] = nullptr;
		}
		rep[y] = move(yo);
	}
	for (const var_spec &v : gi.knobs) {
		ojson ko = ojson::object();
		ko["value_in_config"] = oz.have_config
			? ojson(q_dbl(oz.config.at(v.name))) : ojson();
		rep[v.name] = move(ko);
	}
	const obj_search &last = oz.objs.back();
	auto wrap = [](const ojson &v) {
		ojson o = ojson::object();
		o["value_in_config"] = v;
		return o;
	};
	rep[last.name + "_scaled"] = wrap(oz.have_config
		? ojson(q_dbl(oz.scaled_value(last, oz.config))) : ojson());
	rep["threshold_lo_scaled"] = wrap(last.lo
		? ojson(q_dbl(*last.lo)) : ojson());
	rep["threshold_lo"] = wrap(last.lo
		? ojson(q_dbl(last.unscale(*last.lo))) : ojson());
	rep["threshold_up_scaled"] = wrap(last.up
		? ojson(q_dbl(*last.up)) : ojson());
	rep["threshold_up"] = wrap(last.up
		? ojson(q_dbl(last.unscale(*last.up))) : ojson());
	rep["max_in_data"] = wrap(1.0);
	rep["min_in_data"] = wrap(0.0);
	rep["smlp_execution"] = "completed";
	rep["interface_consistent"] = detail::bstr(g.interface_c);
	rep["model_consistent"] = detail::bstr(g.model_c);
	rep["synthesis_feasible"] = detail::bstr(synthesis_feasible);
	out.report = move(rep);
	return out;
}

} // namespace smlp

#endif
