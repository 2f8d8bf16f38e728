/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_SOLVER_HH
#define SMLP_SOLVER_HH

#include <smlp/form.hh>
#include <smlp/ival.hh>

namespace smlp {

/* Quantifier-free satisfiability over bounded boxes, decided up to a
 * tolerance delta: "unsat" answers are exact, "sat" answers come with a
 * rational witness that satisfies every atom with slack at most delta.
 * The search interleaves interval contraction with splitting; boxes
 * narrower than the resolution limit are set aside, turning the answer
 * into "unknown" instead of an unsound "unsat". */

struct svar {

	str name;
	ival dom;
	bool integral = false;
};

struct box {

	vec<ival> iv;
};

enum class sat_status { SAT, UNSAT, UNKNOWN };

struct sat_result {

	sat_status status = sat_status::UNKNOWN;
	hmap<str,Q> witness; /* SAT only */
	str reason;          /* UNKNOWN only */
	long splits = 0;
};

enum class vld_status { VALID, COUNTEREXAMPLE, UNKNOWN };

struct vld_result {

	vld_status status = vld_status::UNKNOWN;
	hmap<str,Q> counterexample; /* COUNTEREXAMPLE only */
	str reason;                 /* UNKNOWN only */
};

struct solver_cfg {

	Q delta = Q(1, 1000000000);
	long max_splits = 100000;
	/* splitting stops below this fraction of the original width */
	Q min_width = Q(1, (long)1 << 62);
	int max_contract_rounds = 20;
};

namespace detail {

enum class nop { CNST, VAR, ADD, SUB, MUL, DIV, NEG };

struct cnode {
	nop op;
	int a = -1, b = -1;
	Q c;
	int var = -1;
};

struct catom {
	acmp op;
	int root;
	vec<int> nodes; /* topological order, root last */
	vec<int> vars;
};

struct compiled {

	vec<svar> vars;
	hmap<str,int> var_id;
	vec<cnode> pool;
	vec<catom> atoms;

	/* mirror of the formula over atom indices */
	struct cform {
		enum kind { ATOM, ALL, ANY } k = ATOM;
		int atom = -1;
		vec<cform> args;
	};
	cform root;
	int trivial = 0; /* +1 always true, -1 always false */

	hmap<const expr *, int> memo;

	int add_node(cnode n)
	{
		pool.push_back(move(n));
		return (int)pool.size() - 1;
	}

	int compile_expr(const eptr &e)
	{
		auto it = memo.find(e.get());
		if (it != memo.end())
			return it->second;
		int id;
		switch (e->op) {
		case eop::CNST:
			id = add_node({ nop::CNST, -1, -1, e->value, -1 });
			break;
		case eop::VAR: {
			auto vi = var_id.find(e->var);
			if (vi == var_id.end())
				die("variable '%s' is not bound in this check",
				    e->var.c_str());
			id = add_node({ nop::VAR, -1, -1, Q(0), vi->second });
			break;
		}
		case eop::NEG:
			id = add_node({ nop::NEG, compile_expr(e->a), -1,
			                Q(0), -1 });
			break;
		case eop::ADD: case eop::SUB: case eop::MUL: case eop::DIV: {
			nop op = e->op == eop::ADD ? nop::ADD :
			         e->op == eop::SUB ? nop::SUB :
			         e->op == eop::MUL ? nop::MUL : nop::DIV;
			int a = compile_expr(e->a);
			int b = compile_expr(e->b);
			id = add_node({ op, a, b, Q(0), -1 });
			break;
		}
		case eop::POW: {
			/* exponents must be constant integers; the power
			 * is expanded into products so that interval
			 * propagation stays exact */
			if (!expr_vars(e->b).empty())
				die("exponent must be constant in '%s'",
				    expr_str(e).c_str());
			Q p = eval_num(e->b, {});
			if (!q_is_int(p))
				die("exponent must be an integer in '%s'",
				    expr_str(e).c_str());
			if (q_abs(p) > 64)
				die("exponent out of range in '%s'",
				    expr_str(e).c_str());
			long n = p.get_num().get_si();
			int base = compile_expr(e->a);
			id = compile_pow(base, n);
			break;
		}
		default:
			die("unsupported term in constraint: '%s'",
			    expr_str(e).c_str());
		}
		memo[e.get()] = id;
		return id;
	}

	int compile_pow(int base, long n)
	{
		if (n == 0)
			return add_node({ nop::CNST, -1, -1, Q(1), -1 });
		if (n < 0) {
			int one = add_node({ nop::CNST, -1, -1, Q(1), -1 });
			return add_node({ nop::DIV, one, compile_pow(base, -n),
			                  Q(0), -1 });
		}
		if (n == 1)
			return base;
		int h = compile_pow(base, n/2);
		int sq = add_node({ nop::MUL, h, h, Q(0), -1 });
		if (n % 2)
			return add_node({ nop::MUL, sq, base, Q(0), -1 });
		return sq;
	}

	int compile_atom(acmp op, const eptr &t)
	{
		catom a;
		a.op = op;
		a.root = compile_expr(t);
		/* collect the atom's subgraph in topological order */
		vec<int> stack = { a.root };
		hset<int> seen;
		while (!stack.empty()) {
			int n = stack.back();
			stack.pop_back();
			if (!seen.insert(n).second)
				continue;
			if (pool[n].a >= 0)
				stack.push_back(pool[n].a);
			if (pool[n].b >= 0)
				stack.push_back(pool[n].b);
		}
		for (int n = 0; n <= a.root; n++)
			if (seen.count(n)) {
				a.nodes.push_back(n);
				if (pool[n].op == nop::VAR)
					a.vars.push_back(pool[n].var);
			}
		std::sort(a.vars.begin(), a.vars.end());
		a.vars.erase(std::unique(a.vars.begin(), a.vars.end()),
		             a.vars.end());
		atoms.push_back(move(a));
		return (int)atoms.size() - 1;
	}

	cform compile_form(const fptr &f)
	{
		cform c;
		switch (f->k) {
		case form::ATOM:
			c.k = cform::ATOM;
			c.atom = compile_atom(f->op, f->t);
			return c;
		case form::ALL:
			c.k = cform::ALL;
			break;
		case form::ANY:
			c.k = cform::ANY;
			break;
		default:
			die("internal: unexpected constant subformula");
		}
		for (const fptr &a : f->args)
			c.args.push_back(compile_form(a));
		return c;
	}
};

inline compiled compile(vec<svar> vars, const fptr &f)
{
	compiled c;
	c.vars = move(vars);
	for (size_t i = 0; i < c.vars.size(); i++)
		c.var_id[c.vars[i].name] = (int)i;
	if (f->k == form::TRUE)
		c.trivial = 1;
	else if (f->k == form::FALSE)
		c.trivial = -1;
	else
		c.root = c.compile_form(f);
	return c;
}

/* per-search scratch and state */
struct search {

	const compiled &cc;
	const solver_cfg &cfg;

	struct snode {
		box b;
		vec<const compiled::cform *> todo;
		vec<int> active; /* atom indices that still must hold */
	};

	vec<snode> stack;
	vec<int> parked = {};
	long splits = 0;

	/* forward values and backward targets, indexed by pool node */
	vec<opt<xiv>> fv;
	vec<opt<xiv>> tgt;

	search(const compiled &c, const solver_cfg &g) : cc(c), cfg(g)
	{
		fv.resize(cc.pool.size());
		tgt.resize(cc.pool.size());
	}

	/* forward interval evaluation of one atom's subgraph; false when
	 * the term is undefined on the whole box (division by an interval
	 * that is identically zero) */
	bool forward(const catom &a, const box &b)
	{
		for (int n : a.nodes) {
			const cnode &nd = cc.pool[n];
			switch (nd.op) {
			case nop::CNST:
				fv[n] = xiv(nd.c);
				break;
			case nop::VAR:
				fv[n] = xiv(b.iv[nd.var]);
				break;
			case nop::NEG:
				fv[n] = fv[nd.a] ? opt<xiv>(xneg(*fv[nd.a]))
				                 : std::nullopt;
				break;
			case nop::ADD:
				fv[n] = fv[nd.a] && fv[nd.b]
				      ? opt<xiv>(xadd(*fv[nd.a], *fv[nd.b]))
				      : std::nullopt;
				break;
			case nop::SUB:
				fv[n] = fv[nd.a] && fv[nd.b]
				      ? opt<xiv>(xsub(*fv[nd.a], *fv[nd.b]))
				      : std::nullopt;
				break;
			case nop::MUL:
				fv[n] = fv[nd.a] && fv[nd.b]
				      ? opt<xiv>(xmul(*fv[nd.a], *fv[nd.b]))
				      : std::nullopt;
				break;
			case nop::DIV:
				fv[n] = fv[nd.a] && fv[nd.b]
				      ? xdiv(*fv[nd.a], *fv[nd.b])
				      : std::nullopt;
				break;
			}
		}
		return (bool)fv[a.root];
	}

	/* -1 refuted, +1 certainly true, 0 undecided */
	int classify(const catom &a, const box &b)
	{
		if (!forward(a, b))
			return -1; /* nowhere defined */
		const xiv &r = *fv[a.root];
		switch (a.op) {
		case acmp::LE:
			if (r.lo && sgn(*r.lo) > 0)
				return -1;
			if (r.hi && sgn(*r.hi) <= 0)
				return +1;
			return 0;
		case acmp::LT:
			if (r.lo && sgn(*r.lo) >= 0)
				return -1;
			if (r.hi && sgn(*r.hi) < 0)
				return +1;
			return 0;
		case acmp::EQ:
			if (!r.contains_zero())
				return -1;
			if (r.is_zero())
				return +1;
			return 0;
		default: /* NE */
			if (r.is_zero())
				return -1;
			if (!r.contains_zero())
				return +1;
			return 0;
		}
	}

	/* narrow one variable interval; -1 empty, 1 narrowed, 0 unchanged */
	int narrow_var(box &b, int var, const xiv &t)
	{
		const svar &v = cc.vars[var];
		opt<xiv> m = xisect(xiv(b.iv[var]), t);
		if (!m)
			return -1;
		/* subset of a bounded interval is bounded */
		Q lo = *m->lo, hi = *m->hi;
		if (v.integral) {
			Z l = q_ceil(lo), h = q_floor(hi);
			if (l > h)
				return -1;
			lo = Q(l);
			hi = Q(h);
		}
		if (lo == b.iv[var].lo && hi == b.iv[var].hi)
			return 0;
		b.iv[var] = ival(move(lo), move(hi));
		return 1;
	}

	/* backward (HC4) pass over one atom; assumes forward() just ran
	 * and the atom is defined; -1 empty box, 1 narrowed, 0 unchanged */
	int backward(const catom &a, box &b)
	{
		for (int n : a.nodes)
			tgt[n] = fv[n];
		/* clip the root by the relation */
		xiv want;
		switch (a.op) {
		case acmp::LE:
		case acmp::LT:
			want = xiv(std::nullopt, opt<Q>(Q(0)));
			break;
		case acmp::EQ:
			want = xiv(Q(0));
			break;
		default:
			return 0; /* != does not contract */
		}
		opt<xiv> r = xisect(*tgt[a.root], want);
		if (!r)
			return -1;
		tgt[a.root] = r;
		int changed = 0;
		for (size_t i = a.nodes.size(); i-- > 0; ) {
			int n = a.nodes[i];
			const cnode &nd = cc.pool[n];
			const xiv &t = *tgt[n];
			auto refine = [&](int child, const xiv &nt) -> bool {
				opt<xiv> m = xisect(*tgt[child], nt);
				if (!m)
					return false;
				tgt[child] = m;
				return true;
			};
			switch (nd.op) {
			case nop::CNST:
				break;
			case nop::VAR: {
				int w = narrow_var(b, nd.var, t);
				if (w < 0)
					return -1;
				changed |= w;
				break;
			}
			case nop::NEG:
				if (!refine(nd.a, xneg(t)))
					return -1;
				break;
			case nop::ADD:
				if (!refine(nd.a, xsub(t, *tgt[nd.b])) ||
				    !refine(nd.b, xsub(t, *tgt[nd.a])))
					return -1;
				break;
			case nop::SUB:
				if (!refine(nd.a, xadd(t, *tgt[nd.b])) ||
				    !refine(nd.b, xsub(*tgt[nd.a], t)))
					return -1;
				break;
			case nop::MUL: {
				opt<xiv> na = xdiv(t, *tgt[nd.b]);
				if (na && !refine(nd.a, *na))
					return -1;
				opt<xiv> nb = xdiv(t, *tgt[nd.a]);
				if (nb && !refine(nd.b, *nb))
					return -1;
				break;
			}
			case nop::DIV: {
				if (!refine(nd.a, xmul(t, *tgt[nd.b])))
					return -1;
				opt<xiv> nb = xdiv(*tgt[nd.a], t);
				if (nb && !refine(nd.b, *nb))
					return -1;
				break;
			}
			}
		}
		return changed;
	}

	/* fixpoint contraction; false when the node became inconsistent */
	bool contract(snode &nd)
	{
		for (int round = 0; round < cfg.max_contract_rounds; round++) {
			bool changed = false;
			for (size_t i = 0; i < nd.active.size(); ) {
				const catom &a = cc.atoms[nd.active[i]];
				int cl = classify(a, nd.b);
				if (cl < 0)
					return false;
				if (cl > 0) {
					/* holds on the whole box; boxes only
					 * shrink, so it can be retired */
					nd.active[i] = nd.active.back();
					nd.active.pop_back();
					continue;
				}
				int w = backward(a, nd.b);
				if (w < 0)
					return false;
				if (w > 0)
					changed = true;
				i++;
			}
			if (!changed)
				break;
		}
		return true;
	}

	hmap<str,Q> center_of(const box &b)
	{
		hmap<str,Q> c;
		for (size_t i = 0; i < cc.vars.size(); i++) {
			Q m = b.iv[i].mid();
			if (cc.vars[i].integral)
				m = Q(q_round_tie_low(m));
			c[cc.vars[i].name] = move(m);
		}
		return c;
	}

	/* exact rational evaluation of an atom's term at a point */
	opt<Q> eval_at(const catom &a, const vec<Q> &pt)
	{
		static thread_local vec<Q> val;
		val.resize(cc.pool.size());
		for (int n : a.nodes) {
			const cnode &nd = cc.pool[n];
			switch (nd.op) {
			case nop::CNST: val[n] = nd.c; break;
			case nop::VAR: val[n] = pt[nd.var]; break;
			case nop::NEG: val[n] = -val[nd.a]; break;
			case nop::ADD: val[n] = val[nd.a] + val[nd.b]; break;
			case nop::SUB: val[n] = val[nd.a] - val[nd.b]; break;
			case nop::MUL: val[n] = val[nd.a] * val[nd.b]; break;
			case nop::DIV:
				if (sgn(val[nd.b]) == 0)
					return std::nullopt;
				val[n] = val[nd.a] / val[nd.b];
				break;
			}
		}
		return val[a.root];
	}

	bool delta_holds(const catom &a, const vec<Q> &pt)
	{
		opt<Q> d = eval_at(a, pt);
		if (!d)
			return false;
		switch (a.op) {
		case acmp::LE: return *d <= cfg.delta;
		case acmp::LT: return *d < cfg.delta;
		case acmp::EQ: return q_abs(*d) <= cfg.delta;
		default: return sgn(*d) != 0;
		}
	}

	bool delta_test(const snode &nd, hmap<str,Q> &witness)
	{
		hmap<str,Q> c = center_of(nd.b);
		vec<Q> pt(cc.vars.size());
		for (size_t i = 0; i < cc.vars.size(); i++)
			pt[i] = c[cc.vars[i].name];
		for (int ai : nd.active)
			if (!delta_holds(cc.atoms[ai], pt))
				return false;
		witness = move(c);
		return true;
	}

	/* split variable choice: widest interval relative to its original
	 * domain, among variables of still-active atoms; -1 when all are
	 * at the resolution limit */
	int pick_var(const snode &nd)
	{
		vec<char> involved(cc.vars.size(), 0);
		for (int ai : nd.active)
			for (int v : cc.atoms[ai].vars)
				involved[v] = 1;
		int best = -1;
		Q best_w(0);
		for (size_t i = 0; i < cc.vars.size(); i++) {
			if (!involved[i])
				continue;
			Q dw = cc.vars[i].dom.width();
			if (sgn(dw) == 0)
				continue;
			Q w = nd.b.iv[i].width() / dw;
			if (w <= cfg.min_width)
				continue;
			if (best < 0 || w > best_w) {
				best = (int)i;
				best_w = w;
			}
		}
		return best;
	}

	/* quick per-disjunct filtering of an ANY node; the result lists
	 * the disjuncts that are not refuted on the current box; true in
	 * certainly_true when one of them already holds everywhere */
	void filter_any(const compiled::cform &f, const box &b,
	                vec<const compiled::cform *> &keep,
	                bool &certainly_true)
	{
		certainly_true = false;
		for (const compiled::cform &arg : f.args) {
			if (arg.k == compiled::cform::ATOM) {
				int cl = classify(cc.atoms[arg.atom], b);
				if (cl > 0) {
					certainly_true = true;
					return;
				}
				if (cl < 0)
					continue;
			}
			keep.push_back(&arg);
		}
	}

	sat_result run()
	{
		sat_result res;
		snode init;
		init.b.iv.reserve(cc.vars.size());
		for (const svar &v : cc.vars) {
			ival d = v.dom;
			if (v.integral) {
				Z l = q_ceil(d.lo), h = q_floor(d.hi);
				if (l > h) {
					res.status = sat_status::UNSAT;
					return res;
				}
				d = ival(Q(l), Q(h));
			}
			init.b.iv.push_back(move(d));
		}
		init.todo.push_back(&cc.root);
		stack.push_back(move(init));
		bool parked_any = false;
		while (!stack.empty()) {
			snode nd = move(stack.back());
			stack.pop_back();
			bool dead = false, branched = false;
			while (!nd.todo.empty() && !dead && !branched) {
				const compiled::cform *f = nd.todo.back();
				nd.todo.pop_back();
				switch (f->k) {
				case compiled::cform::ATOM:
					nd.active.push_back(f->atom);
					break;
				case compiled::cform::ALL:
					for (const compiled::cform &a : f->args)
						nd.todo.push_back(&a);
					break;
				case compiled::cform::ANY: {
					vec<const compiled::cform *> keep;
					bool whole = false;
					filter_any(*f, nd.b, keep, whole);
					if (whole)
						break;
					if (keep.empty()) {
						dead = true;
						break;
					}
					if (keep.size() == 1) {
						nd.todo.push_back(keep[0]);
						break;
					}
					if (++splits > cfg.max_splits) {
						res.status = sat_status::UNKNOWN;
						res.reason = "split budget "
							"exhausted";
						res.splits = splits;
						return res;
					}
					for (size_t i = keep.size(); i-- > 0; ) {
						snode child;
						child.b = nd.b;
						child.todo = nd.todo;
						child.todo.push_back(keep[i]);
						child.active = nd.active;
						stack.push_back(move(child));
					}
					branched = true;
					break;
				}
				}
			}
			if (dead || branched)
				continue;
			if (!contract(nd))
				continue;
			if (nd.active.empty()) {
				/* everything certainly holds */
				res.status = sat_status::SAT;
				res.witness = center_of(nd.b);
				res.splits = splits;
				return res;
			}
			if (delta_test(nd, res.witness)) {
				res.status = sat_status::SAT;
				res.splits = splits;
				return res;
			}
			int v = pick_var(nd);
			if (v < 0) {
				parked_any = true;
				continue;
			}
			if (++splits > cfg.max_splits) {
				res.status = sat_status::UNKNOWN;
				res.reason = "split budget exhausted";
				res.splits = splits;
				return res;
			}
			const ival &iv0 = nd.b.iv[v];
			Q mid = iv0.mid();
			snode left, right;
			left.b = nd.b;
			right.b = nd.b;
			left.active = nd.active;
			right.active = nd.active;
			if (cc.vars[v].integral) {
				Z m = q_floor(mid);
				left.b.iv[v] = ival(iv0.lo, Q(m));
				right.b.iv[v] = ival(Q(m+1), iv0.hi);
			} else {
				left.b.iv[v] = ival(iv0.lo, mid);
				right.b.iv[v] = ival(mid, iv0.hi);
			}
			stack.push_back(move(right));
			stack.push_back(move(left));
		}
		res.status = parked_any ? sat_status::UNKNOWN
		                        : sat_status::UNSAT;
		if (parked_any)
			res.reason = "undecided boxes at resolution limit";
		res.splits = splits;
		return res;
	}
};

} // namespace detail

inline sat_result check_sat(const vec<svar> &vars, const fptr &f,
                            const solver_cfg &cfg)
{
	detail::compiled cc = detail::compile(vars, f);
	sat_result r;
	if (cc.trivial < 0) {
		r.status = sat_status::UNSAT;
		return r;
	}
	if (cc.trivial > 0) {
		r.status = sat_status::SAT;
		for (const svar &v : vars) {
			ival d = v.dom;
			if (v.integral) {
				Z l = q_ceil(d.lo), h = q_floor(d.hi);
				if (l > h) {
					r.status = sat_status::UNSAT;
					r.witness.clear();
					return r;
				}
				d = ival(Q(l), Q(h));
			}
			Q m = d.mid();
			if (v.integral)
				m = Q(q_round_tie_low(m));
			r.witness[v.name] = move(m);
		}
		return r;
	}
	detail::search s(cc, cfg);
	return s.run();
}

inline vld_result check_valid(const vec<svar> &vars, const fptr &f,
                              const solver_cfg &cfg)
{
	sat_result r = check_sat(vars, f_not(f), cfg);
	vld_result v;
	switch (r.status) {
	case sat_status::UNSAT:
		v.status = vld_status::VALID;
		break;
	case sat_status::SAT:
		v.status = vld_status::COUNTEREXAMPLE;
		v.counterexample = move(r.witness);
		break;
	default:
		v.status = vld_status::UNKNOWN;
		v.reason = move(r.reason);
		break;
	}
	return v;
}

} // namespace smlp

#endif
