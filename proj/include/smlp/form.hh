/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_FORM_HH
#define SMLP_FORM_HH

#include <smlp/expr.hh>

namespace smlp {

/* Formulas are kept in negation normal form over four atom shapes
 * t <= 0, t < 0, t = 0, t != 0; conjunction and disjunction are
 * n-ary.  Conditionals inside atoms are lifted into guarded cases at
 * construction, so atom terms are pure arithmetic. */

enum class acmp { LE, LT, EQ, NE };

struct form;
using fptr = sptr<const form>;

struct form {

	enum kind { TRUE, FALSE, ATOM, ALL, ANY } k;
	acmp op = acmp::LE; /* ATOM: t op 0 */
	eptr t;
	vec<fptr> args;     /* ALL / ANY */
};

inline fptr f_true()
{
	static const fptr t = [] {
		auto f = std::make_shared<form>();
		f->k = form::TRUE;
		return f;
	}();
	return t;
}

inline fptr f_false()
{
	static const fptr t = [] {
		auto f = std::make_shared<form>();
		f->k = form::FALSE;
		return f;
	}();
	return t;
}

inline fptr f_atom(acmp op, eptr t)
{
	if (t->op == eop::CNST) {
		int s = sgn(t->value);
		bool v;
		switch (op) {
		case acmp::LE: v = s <= 0; break;
		case acmp::LT: v = s < 0; break;
		case acmp::EQ: v = s == 0; break;
		default: v = s != 0; break;
		}
		return v ? f_true() : f_false();
	}
	auto f = std::make_shared<form>();
	f->k = form::ATOM;
	f->op = op;
	f->t = move(t);
	return f;
}

inline fptr f_all(vec<fptr> args)
{
	vec<fptr> keep;
	for (fptr &a : args) {
		if (a->k == form::TRUE)
			continue;
		if (a->k == form::FALSE)
			return f_false();
		if (a->k == form::ALL) {
			for (const fptr &s : a->args)
				keep.push_back(s);
			continue;
		}
		keep.push_back(move(a));
	}
	if (keep.empty())
		return f_true();
	if (keep.size() == 1)
		return keep[0];
	auto f = std::make_shared<form>();
	f->k = form::ALL;
	f->args = move(keep);
	return f;
}

inline fptr f_any(vec<fptr> args)
{
	vec<fptr> keep;
	for (fptr &a : args) {
		if (a->k == form::FALSE)
			continue;
		if (a->k == form::TRUE)
			return f_true();
		if (a->k == form::ANY) {
			for (const fptr &s : a->args)
				keep.push_back(s);
			continue;
		}
		keep.push_back(move(a));
	}
	if (keep.empty())
		return f_false();
	if (keep.size() == 1)
		return keep[0];
	auto f = std::make_shared<form>();
	f->k = form::ANY;
	f->args = move(keep);
	return f;
}

/* negation, pushed to the atoms */
inline fptr f_not(const fptr &f)
{
	switch (f->k) {
	case form::TRUE:
		return f_false();
	case form::FALSE:
		return f_true();
	case form::ATOM:
		switch (f->op) {
		case acmp::LE: /* !(t <= 0)  <=>  -t < 0 */
			return f_atom(acmp::LT, mk1(eop::NEG, f->t));
		case acmp::LT: /* !(t < 0)  <=>  -t <= 0 */
			return f_atom(acmp::LE, mk1(eop::NEG, f->t));
		case acmp::EQ:
			return f_atom(acmp::NE, f->t);
		default:
			return f_atom(acmp::EQ, f->t);
		}
	case form::ALL: {
		vec<fptr> neg;
		for (const fptr &a : f->args)
			neg.push_back(f_not(a));
		return f_any(move(neg));
	}
	default: {
		vec<fptr> neg;
		for (const fptr &a : f->args)
			neg.push_back(f_not(a));
		return f_all(move(neg));
	}
	}
}

namespace detail {

/* guarded arithmetic cases of a numeric expression: the guards
 * partition, and on each the expression equals the pure term */
struct guarded { fptr guard; eptr term; };

inline fptr form_of(const eptr &e);

inline vec<guarded> unnest(const eptr &e)
{
	switch (e->op) {
	case eop::CNST:
	case eop::VAR:
		return { { f_true(), e } };
	case eop::NEG: {
		vec<guarded> in = unnest(e->a), out;
		for (guarded &g : in)
			out.push_back({ g.guard, mk1(eop::NEG, g.term) });
		return out;
	}
	case eop::ADD: case eop::SUB: case eop::MUL:
	case eop::DIV: case eop::POW: {
		vec<guarded> la = unnest(e->a), lb = unnest(e->b), out;
		for (const guarded &ga : la)
			for (const guarded &gb : lb)
				out.push_back({ f_all({ ga.guard, gb.guard }),
				                mk2(e->op, ga.term, gb.term) });
		return out;
	}
	case eop::ITE: {
		fptr c = form_of(e->c), nc = f_not(c);
		vec<guarded> out;
		for (const guarded &g : unnest(e->a))
			out.push_back({ f_all({ c, g.guard }), g.term });
		for (const guarded &g : unnest(e->b))
			out.push_back({ f_all({ nc, g.guard }), g.term });
		return out;
	}
	default:
		die("boolean subterm in arithmetic position in '%s'",
		    expr_str(e).c_str());
	}
}

inline fptr atom_of(eop op, const eptr &a, const eptr &b)
{
	acmp ac;
	bool flip; /* encode via b - a instead of a - b */
	switch (op) {
	case eop::LE: ac = acmp::LE; flip = false; break;
	case eop::LT: ac = acmp::LT; flip = false; break;
	case eop::GE: ac = acmp::LE; flip = true; break;
	case eop::GT: ac = acmp::LT; flip = true; break;
	case eop::EQ: ac = acmp::EQ; flip = false; break;
	default: ac = acmp::NE; flip = false; break;
	}
	vec<fptr> cases;
	for (const guarded &ga : unnest(a))
		for (const guarded &gb : unnest(b)) {
			eptr t = flip ? mk2(eop::SUB, gb.term, ga.term)
			              : mk2(eop::SUB, ga.term, gb.term);
			cases.push_back(f_all({ ga.guard, gb.guard,
			                        f_atom(ac, t) }));
		}
	return f_any(move(cases));
}

inline fptr form_of(const eptr &e)
{
	switch (e->op) {
	case eop::AND:
		return f_all({ form_of(e->a), form_of(e->b) });
	case eop::OR:
		return f_any({ form_of(e->a), form_of(e->b) });
	case eop::XOR: {
		fptr a = form_of(e->a), b = form_of(e->b);
		return f_any({ f_all({ a, f_not(b) }),
		               f_all({ f_not(a), b }) });
	}
	case eop::NOT:
		return f_not(form_of(e->a));
	case eop::ITE: {
		fptr c = form_of(e->c);
		return f_any({ f_all({ c, form_of(e->a) }),
		               f_all({ f_not(c), form_of(e->b) }) });
	}
	case eop::EQ: case eop::NE: case eop::LT:
	case eop::LE: case eop::GT: case eop::GE:
		return atom_of(e->op, e->a, e->b);
	default:
		die("arithmetic term in boolean position in '%s'",
		    expr_str(e).c_str());
	}
}

} // namespace detail

/* translate a boolean expression into the normal form */
inline fptr formula_of(const eptr &e)
{
	return detail::form_of(e);
}

inline void collect_form_vars(const fptr &f, std::set<str> &out)
{
	if (f->k == form::ATOM)
		collect_vars(f->t, out);
	for (const fptr &a : f->args)
		collect_form_vars(a, out);
}

inline std::set<str> form_vars(const fptr &f)
{
	std::set<str> s;
	collect_form_vars(f, s);
	return s;
}

/* replace variables by terms; constant atoms fold away */
inline fptr form_subst(const fptr &f, const hmap<str,eptr> &s)
{
	switch (f->k) {
	case form::TRUE:
	case form::FALSE:
		return f;
	case form::ATOM:
		return f_atom(f->op, subst_expr(f->t, s));
	default: {
		vec<fptr> a;
		for (const fptr &g : f->args)
			a.push_back(form_subst(g, s));
		return f->k == form::ALL ? f_all(move(a)) : f_any(move(a));
	}
	}
}

/* every atom's term is defined at every point */
inline bool form_total(const fptr &f)
{
	if (f->k == form::ATOM)
		return expr_total(f->t);
	for (const fptr &a : f->args)
		if (!form_total(a))
			return false;
	return true;
}

/* exact truth under a total assignment */
inline bool eval_form(const fptr &f, const hmap<str,Q> &asgn)
{
	switch (f->k) {
	case form::TRUE:
		return true;
	case form::FALSE:
		return false;
	case form::ATOM: {
		Q d = eval_num(f->t, asgn);
		switch (f->op) {
		case acmp::LE: return sgn(d) <= 0;
		case acmp::LT: return sgn(d) < 0;
		case acmp::EQ: return sgn(d) == 0;
		default: return sgn(d) != 0;
		}
	}
	case form::ALL:
		for (const fptr &a : f->args)
			if (!eval_form(a, asgn))
				return false;
		return true;
	default:
		for (const fptr &a : f->args)
			if (eval_form(a, asgn))
				return true;
		return false;
	}
}

/* truth with tolerance delta on the thresholds: t <= 0 weakens to
 * t <= delta, t < 0 to t < delta, t = 0 to |t| <= delta; t != 0 stays
 * exact */
inline bool eval_form_delta(const fptr &f, const hmap<str,Q> &asgn,
                            const Q &delta)
{
	switch (f->k) {
	case form::TRUE:
		return true;
	case form::FALSE:
		return false;
	case form::ATOM: {
		Q d = eval_num(f->t, asgn);
		switch (f->op) {
		case acmp::LE: return d <= delta;
		case acmp::LT: return d < delta;
		case acmp::EQ: return q_abs(d) <= delta;
		default: return sgn(d) != 0;
		}
	}
	case form::ALL:
		for (const fptr &a : f->args)
			if (!eval_form_delta(a, asgn, delta))
				return false;
		return true;
	default:
		for (const fptr &a : f->args)
			if (eval_form_delta(a, asgn, delta))
				return true;
		return false;
	}
}

} // namespace smlp

#endif
