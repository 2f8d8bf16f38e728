/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_EXPR_HH
#define SMLP_EXPR_HH

#include <smlp/q.hh>

#include <algorithm>
#include <cassert>
#include <set>
#include <variant>

namespace smlp {

/* abstract syntax of the expression language */
enum class eop {
	CNST, VAR,
	NEG, NOT,                         /* unary - and ~ */
	ADD, SUB, MUL, DIV, POW,
	AND, OR, XOR,
	EQ, NE, LT, LE, GT, GE,
	ITE,                              /* a if c else b */
};

struct expr;
using eptr = sptr<const expr>;

struct expr {

	eop op;
	Q value;         /* CNST */
	str var;         /* VAR */
	eptr a, b, c;    /* operands; ITE: c = condition, a = then, b = else */
};

inline eptr mk_cnst(Q v)
{
	auto e = std::make_shared<expr>();
	e->op = eop::CNST;
	e->value = move(v);
	return e;
}

inline eptr mk_var(str name)
{
	auto e = std::make_shared<expr>();
	e->op = eop::VAR;
	e->var = move(name);
	return e;
}

inline eptr mk1(eop op, eptr a)
{
	auto e = std::make_shared<expr>();
	e->op = op;
	e->a = move(a);
	return e;
}

inline eptr mk2(eop op, eptr a, eptr b)
{
	auto e = std::make_shared<expr>();
	e->op = op;
	e->a = move(a);
	e->b = move(b);
	return e;
}

inline eptr mk_ite(eptr cond, eptr then_e, eptr else_e)
{
	auto e = std::make_shared<expr>();
	e->op = eop::ITE;
	e->c = move(cond);
	e->a = move(then_e);
	e->b = move(else_e);
	return e;
}

inline bool is_cmp(eop op)
{
	switch (op) {
	case eop::EQ: case eop::NE: case eop::LT:
	case eop::LE: case eop::GT: case eop::GE:
		return true;
	default:
		return false;
	}
}

inline bool expr_equal(const eptr &x, const eptr &y)
{
	if (x == y)
		return true;
	if (!x || !y || x->op != y->op)
		return false;
	switch (x->op) {
	case eop::CNST: return x->value == y->value;
	case eop::VAR: return x->var == y->var;
	case eop::ITE:
		return expr_equal(x->c, y->c) && expr_equal(x->a, y->a) &&
		       expr_equal(x->b, y->b);
	default:
		return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
	}
}

inline void collect_vars(const eptr &e, std::set<str> &out)
{
	if (!e)
		return;
	if (e->op == eop::VAR)
		out.insert(e->var);
	collect_vars(e->a, out);
	collect_vars(e->b, out);
	collect_vars(e->c, out);
}

inline std::set<str> expr_vars(const eptr &e)
{
	std::set<str> s;
	collect_vars(e, s);
	return s;
}

/* replace variables by expressions */
inline eptr subst_expr(const eptr &e, const hmap<str,eptr> &s)
{
	if (!e)
		return e;
	switch (e->op) {
	case eop::CNST:
		return e;
	case eop::VAR: {
		auto it = s.find(e->var);
		return it == s.end() ? e : it->second;
	}
	case eop::ITE:
		return mk_ite(subst_expr(e->c, s), subst_expr(e->a, s),
		              subst_expr(e->b, s));
	default:
		if (e->b)
			return mk2(e->op, subst_expr(e->a, s),
			           subst_expr(e->b, s));
		return mk1(e->op, subst_expr(e->a, s));
	}
}

/* true when the term denotes a value at every point of its domain:
 * no division (except by a nonzero constant), no negative powers */
inline bool expr_total(const eptr &e)
{
	if (!e)
		return true;
	switch (e->op) {
	case eop::DIV:
		return expr_total(e->a) && e->b->op == eop::CNST &&
		       sgn(e->b->value) != 0;
	case eop::POW:
		return expr_total(e->a) && e->b->op == eop::CNST &&
		       q_is_int(e->b->value) && sgn(e->b->value) >= 0;
	default:
		return expr_total(e->a) && expr_total(e->b) &&
		       expr_total(e->c);
	}
}

/* named expressions in file or command-line order */
using named_exprs = vec<pair<str,eptr>>;

/* ----------------------------------------------------------------------
 * printing; emits input syntax that parses back to the same tree
 * -------------------------------------------------------------------- */

namespace detail {

/* binding strength, higher binds tighter */
inline int eprec(eop op)
{
	switch (op) {
	case eop::ITE: return 0;
	case eop::OR: return 1;
	case eop::XOR: return 2;
	case eop::AND: return 3;
	case eop::EQ: case eop::NE: case eop::LT:
	case eop::LE: case eop::GT: case eop::GE: return 4;
	case eop::ADD: case eop::SUB: return 5;
	case eop::MUL: case eop::DIV: return 6;
	case eop::NEG: case eop::NOT: return 7;
	case eop::POW: return 8;
	case eop::CNST: case eop::VAR: return 9;
	}
	return 9;
}

inline const char *esym(eop op)
{
	switch (op) {
	case eop::ADD: return "+";
	case eop::SUB: return "-";
	case eop::MUL: return "*";
	case eop::DIV: return "/";
	case eop::POW: return "**";
	case eop::AND: return "&";
	case eop::OR: return "|";
	case eop::XOR: return "^";
	case eop::EQ: return "==";
	case eop::NE: return "!=";
	case eop::LT: return "<";
	case eop::LE: return "<=";
	case eop::GT: return ">";
	case eop::GE: return ">=";
	default: return "?";
	}
}

inline void print_expr(str &out, const eptr &e, int min_prec)
{
	int p = eprec(e->op);
	bool paren = p < min_prec;
	if (paren)
		out += '(';
	switch (e->op) {
	case eop::CNST: {
		if (sgn(e->value) < 0 && !paren && min_prec > 5) {
			/* negative literal in a tight context */
			out += '(';
			out += q_str(e->value);
			out += ')';
		} else
			out += q_str(e->value);
		break;
	}
	case eop::VAR:
		out += e->var;
		break;
	case eop::NEG:
		out += '-';
		print_expr(out, e->a, p);
		break;
	case eop::NOT:
		out += '~';
		print_expr(out, e->a, p);
		break;
	case eop::POW:
		/* right associative */
		print_expr(out, e->a, p+1);
		out += "**";
		print_expr(out, e->b, 7);
		break;
	case eop::ITE:
		print_expr(out, e->a, 1);
		out += " if ";
		print_expr(out, e->c, 1);
		out += " else ";
		print_expr(out, e->b, 0);
		break;
	default:
		if (is_cmp(e->op)) {
			/* comparisons do not chain */
			print_expr(out, e->a, p+1);
			out += esym(e->op);
			print_expr(out, e->b, p+1);
		} else {
			/* left associative */
			print_expr(out, e->a, p);
			out += esym(e->op);
			print_expr(out, e->b, p+1);
		}
		break;
	}
	if (paren)
		out += ')';
}

} // namespace detail

inline str expr_str(const eptr &e)
{
	str s;
	detail::print_expr(s, e, 0);
	return s;
}

/* ----------------------------------------------------------------------
 * types and evaluation
 * -------------------------------------------------------------------- */

enum class ety { NUM, BOOL };

/* infers the type, rejecting ill-typed trees */
inline ety expr_type(const eptr &e)
{
	switch (e->op) {
	case eop::CNST:
	case eop::VAR:
		return ety::NUM;
	case eop::NEG:
		if (expr_type(e->a) != ety::NUM)
			die("unary '-' needs a numeric operand in '%s'",
			    expr_str(e).c_str());
		return ety::NUM;
	case eop::NOT:
		if (expr_type(e->a) != ety::BOOL)
			die("'~' needs a boolean operand in '%s'",
			    expr_str(e).c_str());
		return ety::BOOL;
	case eop::ADD: case eop::SUB: case eop::MUL:
	case eop::DIV: case eop::POW:
		if (expr_type(e->a) != ety::NUM || expr_type(e->b) != ety::NUM)
			die("'%s' needs numeric operands in '%s'",
			    detail::esym(e->op), expr_str(e).c_str());
		return ety::NUM;
	case eop::AND: case eop::OR: case eop::XOR:
		if (expr_type(e->a) != ety::BOOL || expr_type(e->b) != ety::BOOL)
			die("'%s' needs boolean operands in '%s'",
			    detail::esym(e->op), expr_str(e).c_str());
		return ety::BOOL;
	case eop::EQ: case eop::NE: case eop::LT:
	case eop::LE: case eop::GT: case eop::GE:
		if (expr_type(e->a) != ety::NUM || expr_type(e->b) != ety::NUM)
			die("'%s' compares numeric operands in '%s'",
			    detail::esym(e->op), expr_str(e).c_str());
		return ety::BOOL;
	case eop::ITE: {
		if (expr_type(e->c) != ety::BOOL)
			die("condition of 'if' must be boolean in '%s'",
			    expr_str(e).c_str());
		ety ta = expr_type(e->a), tb = expr_type(e->b);
		if (ta != tb)
			die("both branches of 'if' must have the same type in '%s'",
			    expr_str(e).c_str());
		return ta;
	}
	}
	die("malformed expression");
}

using eval_val = std::variant<Q,bool>;

inline const Q &as_num(const eval_val &v, const eptr &e)
{
	if (!std::holds_alternative<Q>(v))
		die("expected a numeric value in '%s'", expr_str(e).c_str());
	return std::get<Q>(v);
}

inline bool as_bool(const eval_val &v, const eptr &e)
{
	if (!std::holds_alternative<bool>(v))
		die("expected a boolean value in '%s'", expr_str(e).c_str());
	return std::get<bool>(v);
}

/* exact evaluation under a total assignment; unbound variables, division
 * by zero and non-integer exponents are errors */
inline eval_val eval_expr(const eptr &e, const hmap<str,Q> &asgn)
{
	switch (e->op) {
	case eop::CNST:
		return e->value;
	case eop::VAR: {
		auto it = asgn.find(e->var);
		if (it == asgn.end())
			die("variable '%s' has no value", e->var.c_str());
		return it->second;
	}
	case eop::NEG:
		return Q(-as_num(eval_expr(e->a, asgn), e));
	case eop::NOT:
		return !as_bool(eval_expr(e->a, asgn), e);
	case eop::ADD:
		return Q(as_num(eval_expr(e->a, asgn), e) +
		         as_num(eval_expr(e->b, asgn), e));
	case eop::SUB:
		return Q(as_num(eval_expr(e->a, asgn), e) -
		         as_num(eval_expr(e->b, asgn), e));
	case eop::MUL:
		return Q(as_num(eval_expr(e->a, asgn), e) *
		         as_num(eval_expr(e->b, asgn), e));
	case eop::DIV: {
		Q d = as_num(eval_expr(e->b, asgn), e);
		if (sgn(d) == 0)
			die("division by zero in '%s'", expr_str(e).c_str());
		return Q(as_num(eval_expr(e->a, asgn), e) / d);
	}
	case eop::POW: {
		Q x = as_num(eval_expr(e->a, asgn), e);
		Q p = as_num(eval_expr(e->b, asgn), e);
		if (!q_is_int(p))
			die("exponent must be an integer in '%s'",
			    expr_str(e).c_str());
		if (!p.get_num().fits_slong_p())
			die("exponent out of range in '%s'", expr_str(e).c_str());
		return q_pow(x, p.get_num().get_si());
	}
	case eop::AND:
		return as_bool(eval_expr(e->a, asgn), e) &&
		       as_bool(eval_expr(e->b, asgn), e);
	case eop::OR:
		return as_bool(eval_expr(e->a, asgn), e) ||
		       as_bool(eval_expr(e->b, asgn), e);
	case eop::XOR:
		return as_bool(eval_expr(e->a, asgn), e) !=
		       as_bool(eval_expr(e->b, asgn), e);
	case eop::EQ:
		return as_num(eval_expr(e->a, asgn), e) ==
		       as_num(eval_expr(e->b, asgn), e);
	case eop::NE:
		return as_num(eval_expr(e->a, asgn), e) !=
		       as_num(eval_expr(e->b, asgn), e);
	case eop::LT:
		return as_num(eval_expr(e->a, asgn), e) <
		       as_num(eval_expr(e->b, asgn), e);
	case eop::LE:
		return as_num(eval_expr(e->a, asgn), e) <=
		       as_num(eval_expr(e->b, asgn), e);
	case eop::GT:
		return as_num(eval_expr(e->a, asgn), e) >
		       as_num(eval_expr(e->b, asgn), e);
	case eop::GE:
		return as_num(eval_expr(e->a, asgn), e) >=
		       as_num(eval_expr(e->b, asgn), e);
	case eop::ITE:
		return as_bool(eval_expr(e->c, asgn), e)
		       ? eval_expr(e->a, asgn) : eval_expr(e->b, asgn);
	}
	die("malformed expression");
}

inline Q eval_num(const eptr &e, const hmap<str,Q> &asgn)
{
	return as_num(eval_expr(e, asgn), e);
}

inline bool eval_bool(const eptr &e, const hmap<str,Q> &asgn)
{
	return as_bool(eval_expr(e, asgn), e);
}

} // namespace smlp

#endif
