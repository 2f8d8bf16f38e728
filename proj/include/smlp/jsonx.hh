/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_JSONX_HH
#define SMLP_JSONX_HH

#include <smlp/q.hh>

#include <fstream>
#include <sstream>

namespace smlp {

/* JSON reader that keeps numbers exact: every numeric literal is parsed
 * into a rational, so e.g. 0.1 denotes exactly 1/10.  Object member
 * order is preserved. */
struct jval {

	enum kind { NUL, BOOL, NUM, STR, ARR, OBJ } k = NUL;
	bool b = false;
	Q num;
	str text; /* STR: the value; NUM: the literal as written */
	vec<jval> arr;
	vec<pair<str,jval>> obj;

	bool is_null() const { return k == NUL; }

	const jval *find(strview key) const
	{
		for (const auto &[n, v] : obj)
			if (n == key)
				return &v;
		return NULL;
	}

	const jval &at(strview key, const char *what) const
	{
		const jval *v = find(key);
		if (!v)
			die("%s: missing key '%.*s'", what,
			    (int)key.size(), key.data());
		return *v;
	}

	const str &as_str(const char *what) const
	{
		if (k != STR)
			die("%s: expected a string", what);
		return text;
	}

	const Q &as_num(const char *what) const
	{
		if (k != NUM)
			die("%s: expected a number", what);
		return num;
	}

	bool as_bool(const char *what) const
	{
		if (k != BOOL)
			die("%s: expected a boolean", what);
		return b;
	}

	const vec<jval> &as_arr(const char *what) const
	{
		if (k != ARR)
			die("%s: expected an array", what);
		return arr;
	}

	const vec<pair<str,jval>> &as_obj(const char *what) const
	{
		if (k != OBJ)
			die("%s: expected an object", what);
		return obj;
	}
};

namespace detail {

struct json_parser {

	strview s;
	size_t i = 0;
	const char *what;

	[[noreturn]] void fail(const str &msg) const
	{
		size_t line = 1, col = 1;
		for (size_t j = 0; j < i && j < s.size(); j++)
			if (s[j] == '\n') {
				line++;
				col = 1;
			} else
				col++;
		die("%s: line %zu column %zu: %s", what, line, col,
		    msg.c_str());
	}

	void skip_ws()
	{
		while (i < s.size() && (s[i] == ' ' || s[i] == '\t' ||
		                        s[i] == '\n' || s[i] == '\r'))
			i++;
	}

	char peek()
	{
		skip_ws();
		if (i >= s.size())
			fail("unexpected end of input");
		return s[i];
	}

	void expect(char c)
	{
		if (peek() != c)
			fail(strf("expected '%c'", c));
		i++;
	}

	bool literal(strview w)
	{
		if (s.substr(i, w.size()) == w) {
			i += w.size();
			return true;
		}
		return false;
	}

	str parse_string()
	{
		expect('"');
		str out;
		while (i < s.size() && s[i] != '"') {
			char c = s[i++];
			if (c != '\\') {
				out += c;
				continue;
			}
			if (i >= s.size())
				fail("unterminated string escape");
			char e = s[i++];
			switch (e) {
			case '"': out += '"'; break;
			case '\\': out += '\\'; break;
			case '/': out += '/'; break;
			case 'b': out += '\b'; break;
			case 'f': out += '\f'; break;
			case 'n': out += '\n'; break;
			case 'r': out += '\r'; break;
			case 't': out += '\t'; break;
			case 'u': {
				if (i+4 > s.size())
					fail("truncated \\u escape");
				unsigned cp = 0;
				for (int j = 0; j < 4; j++) {
					char h = s[i++];
					cp <<= 4;
					if (h >= '0' && h <= '9')
						cp |= h - '0';
					else if (h >= 'a' && h <= 'f')
						cp |= h - 'a' + 10;
					else if (h >= 'A' && h <= 'F')
						cp |= h - 'A' + 10;
					else
						fail("invalid \\u escape");
				}
				/* encode as UTF-8 (BMP only) */
				if (cp < 0x80)
					out += (char)cp;
				else if (cp < 0x800) {
					out += (char)(0xc0 | (cp >> 6));
					out += (char)(0x80 | (cp & 0x3f));
				} else {
					out += (char)(0xe0 | (cp >> 12));
					out += (char)(0x80 | ((cp >> 6) & 0x3f));
					out += (char)(0x80 | (cp & 0x3f));
				}
				break;
			}
			default:
				fail(strf("invalid escape '\\%c'", e));
			}
		}
		if (i >= s.size())
			fail("unterminated string");
		i++; /* closing quote */
		return out;
	}

	jval parse_value()
	{
		char c = peek();
		jval v;
		switch (c) {
		case '{': {
			i++;
			v.k = jval::OBJ;
			skip_ws();
			if (i < s.size() && s[i] == '}') {
				i++;
				return v;
			}
			for (;;) {
				skip_ws();
				str key = parse_string();
				expect(':');
				v.obj.emplace_back(move(key), parse_value());
				char d = peek();
				i++;
				if (d == '}')
					return v;
				if (d != ',')
					fail("expected ',' or '}'");
			}
		}
		case '[': {
			i++;
			v.k = jval::ARR;
			skip_ws();
			if (i < s.size() && s[i] == ']') {
				i++;
				return v;
			}
			for (;;) {
				v.arr.push_back(parse_value());
				char d = peek();
				i++;
				if (d == ']')
					return v;
				if (d != ',')
					fail("expected ',' or ']'");
			}
		}
		case '"':
			v.k = jval::STR;
			v.text = parse_string();
			return v;
		case 't':
			if (!literal("true"))
				fail("invalid literal");
			v.k = jval::BOOL;
			v.b = true;
			return v;
		case 'f':
			if (!literal("false"))
				fail("invalid literal");
			v.k = jval::BOOL;
			v.b = false;
			return v;
		case 'n':
			if (!literal("null"))
				fail("invalid literal");
			v.k = jval::NUL;
			return v;
		default: {
			if (c != '-' && !isdigit((unsigned char)c))
				fail("unexpected character");
			size_t j = i;
			if (s[j] == '-')
				j++;
			while (j < s.size() && isdigit((unsigned char)s[j]))
				j++;
			if (j < s.size() && s[j] == '.') {
				j++;
				while (j < s.size() &&
				       isdigit((unsigned char)s[j]))
					j++;
			}
			if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
				j++;
				if (j < s.size() && (s[j] == '+' || s[j] == '-'))
					j++;
				while (j < s.size() &&
				       isdigit((unsigned char)s[j]))
					j++;
			}
			v.k = jval::NUM;
			v.text = str(s.substr(i, j-i));
			opt<Q> q = try_parse_q(v.text);
			if (!q)
				fail("invalid number '" + v.text + "'");
			v.num = *q;
			i = j;
			return v;
		}
		}
	}

	jval parse()
	{
		jval v = parse_value();
		skip_ws();
		if (i < s.size())
			fail("trailing content after JSON value");
		return v;
	}
};

} // namespace detail

inline jval parse_json(strview text, const char *what)
{
	detail::json_parser p;
	p.s = text;
	p.what = what;
	return p.parse();
}

inline str slurp_file(const str &path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		die("cannot open '%s'", path.c_str());
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

inline jval load_json_file(const str &path)
{
	str text = slurp_file(path);
	return parse_json(text, path.c_str());
}

} // namespace smlp

#endif
