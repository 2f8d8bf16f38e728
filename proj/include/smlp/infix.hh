/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_INFIX_HH
#define SMLP_INFIX_HH

#include <smlp/expr.hh>

#include <cstring>

namespace smlp {

/* Recursive-descent parser for the expression syntax used in problem
 * files and on the command line.  Binding strength, loosest to
 * tightest:
 *
 *   e1 if c else e2
 *   | or
 *   ^
 *   & and
 *   == != < <= > >=        (non-chaining)
 *   + -
 *   * /
 *   unary - ~ not
 *   **                     (right associative)
 */

namespace detail {

struct token {
	enum kind { END, NUM, ID, OP } k;
	str text;
	Q num;
	size_t pos;
};

struct lexer {

	strview s;
	size_t i = 0;
	token cur;

	explicit lexer(strview in) : s(in) { advance(); }

	[[noreturn]] void fail(const str &msg, size_t at) const
	{
		die("parse error in '%.*s' at position %zu: %s",
		    (int)s.size(), s.data(), at, msg.c_str());
	}

	void advance()
	{
		while (i < s.size() && isspace((unsigned char)s[i]))
			i++;
		cur.pos = i;
		if (i >= s.size()) {
			cur.k = token::END;
			cur.text = "";
			return;
		}
		char c = s[i];
		if (isdigit((unsigned char)c) ||
		    (c == '.' && i+1 < s.size() &&
		     isdigit((unsigned char)s[i+1]))) {
			size_t j = i;
			while (j < s.size() && isdigit((unsigned char)s[j]))
				j++;
			if (j < s.size() && s[j] == '.') {
				j++;
				while (j < s.size() &&
				       isdigit((unsigned char)s[j]))
					j++;
			}
			if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
				size_t k = j+1;
				if (k < s.size() && (s[k] == '+' || s[k] == '-'))
					k++;
				if (k < s.size() && isdigit((unsigned char)s[k])) {
					j = k;
					while (j < s.size() &&
					       isdigit((unsigned char)s[j]))
						j++;
				}
			}
			cur.k = token::NUM;
			cur.text = str(s.substr(i, j-i));
			opt<Q> q = try_parse_q(cur.text);
			if (!q)
				fail("invalid number '" + cur.text + "'", i);
			cur.num = *q;
			i = j;
			return;
		}
		if (isalpha((unsigned char)c) || c == '_') {
			size_t j = i;
			while (j < s.size() && (isalnum((unsigned char)s[j]) ||
			                        s[j] == '_'))
				j++;
			cur.k = token::ID;
			cur.text = str(s.substr(i, j-i));
			i = j;
			return;
		}
		static const char *two[] = { "**", "==", "!=", "<=", ">=" };
		for (const char *t : two)
			if (s.substr(i, 2) == t) {
				cur.k = token::OP;
				cur.text = t;
				i += 2;
				return;
			}
		if (strchr("+-*/~&^|<>()", c)) {
			cur.k = token::OP;
			cur.text = str(1, c);
			i++;
			return;
		}
		fail(strf("unexpected character '%c'", c), i);
	}

	bool is_op(const char *t) const
	{ return cur.k == token::OP && cur.text == t; }

	bool is_kw(const char *t) const
	{ return cur.k == token::ID && cur.text == t; }

	bool eat_op(const char *t)
	{
		if (!is_op(t))
			return false;
		advance();
		return true;
	}

	bool eat_kw(const char *t)
	{
		if (!is_kw(t))
			return false;
		advance();
		return true;
	}
};

struct parser {

	lexer lx;

	explicit parser(strview s) : lx(s) {}

	eptr parse()
	{
		eptr e = ternary();
		if (lx.cur.k != token::END)
			lx.fail("unexpected '" + lx.cur.text + "'", lx.cur.pos);
		return e;
	}

	eptr ternary()
	{
		eptr e = or_chain();
		if (lx.eat_kw("if")) {
			eptr cond = or_chain();
			if (!lx.eat_kw("else"))
				lx.fail("expected 'else'", lx.cur.pos);
			eptr els = ternary();
			return mk_ite(cond, e, els);
		}
		return e;
	}

	eptr or_chain()
	{
		eptr e = xor_chain();
		while (lx.is_op("|") || lx.is_kw("or")) {
			lx.advance();
			e = mk2(eop::OR, e, xor_chain());
		}
		return e;
	}

	eptr xor_chain()
	{
		eptr e = and_chain();
		while (lx.eat_op("^"))
			e = mk2(eop::XOR, e, and_chain());
		return e;
	}

	eptr and_chain()
	{
		eptr e = comparison();
		while (lx.is_op("&") || lx.is_kw("and")) {
			lx.advance();
			e = mk2(eop::AND, e, comparison());
		}
		return e;
	}

	eptr comparison()
	{
		eptr e = additive();
		eop op;
		if (lx.is_op("=="))
			op = eop::EQ;
		else if (lx.is_op("!="))
			op = eop::NE;
		else if (lx.is_op("<"))
			op = eop::LT;
		else if (lx.is_op("<="))
			op = eop::LE;
		else if (lx.is_op(">"))
			op = eop::GT;
		else if (lx.is_op(">="))
			op = eop::GE;
		else
			return e;
		lx.advance();
		e = mk2(op, e, additive());
		if (lx.cur.k == token::OP &&
		    (lx.cur.text == "==" || lx.cur.text == "!=" ||
		     lx.cur.text == "<" || lx.cur.text == "<=" ||
		     lx.cur.text == ">" || lx.cur.text == ">="))
			lx.fail("chained comparisons are not supported",
			        lx.cur.pos);
		return e;
	}

	eptr additive()
	{
		eptr e = multiplicative();
		for (;;) {
			if (lx.eat_op("+"))
				e = mk2(eop::ADD, e, multiplicative());
			else if (lx.eat_op("-"))
				e = mk2(eop::SUB, e, multiplicative());
			else
				return e;
		}
	}

	eptr multiplicative()
	{
		eptr e = unary();
		for (;;) {
			if (lx.eat_op("*"))
				e = mk2(eop::MUL, e, unary());
			else if (lx.eat_op("/"))
				e = mk2(eop::DIV, e, unary());
			else
				return e;
		}
	}

	eptr unary()
	{
		if (lx.eat_op("-")) {
			eptr e = unary();
			if (e->op == eop::CNST)
				return mk_cnst(-e->value);
			return mk1(eop::NEG, e);
		}
		if (lx.eat_op("~") || lx.eat_kw("not"))
			return mk1(eop::NOT, unary());
		return power();
	}

	eptr power()
	{
		eptr e = atom();
		if (lx.eat_op("**"))
			return mk2(eop::POW, e, unary());
		return e;
	}

	eptr atom()
	{
		if (lx.cur.k == token::NUM) {
			eptr e = mk_cnst(lx.cur.num);
			lx.advance();
			return e;
		}
		if (lx.cur.k == token::ID) {
			if (lx.cur.text == "if" || lx.cur.text == "else" ||
			    lx.cur.text == "and" || lx.cur.text == "or" ||
			    lx.cur.text == "not")
				lx.fail("unexpected keyword '" + lx.cur.text + "'",
				        lx.cur.pos);
			eptr e = mk_var(lx.cur.text);
			lx.advance();
			return e;
		}
		if (lx.eat_op("(")) {
			eptr e = ternary();
			if (!lx.eat_op(")"))
				lx.fail("expected ')'", lx.cur.pos);
			return e;
		}
		lx.fail(lx.cur.k == token::END
		        ? str("unexpected end of input")
		        : "unexpected '" + lx.cur.text + "'", lx.cur.pos);
	}
};

} // namespace detail

inline eptr parse_expr(strview s)
{
	detail::parser p(s);
	return p.parse();
}

} // namespace smlp

#endif
