/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_MODEL_HH
#define SMLP_MODEL_HH

#include <smlp/csv.hh>
#include <smlp/form.hh>
#include <smlp/infix.hh>
#include <smlp/ival.hh>

#include <fstream>

namespace smlp {

/* ----------------------------------------------------------------------
 * model representations
 * -------------------------------------------------------------------- */

struct tree_node {

	int feat = -1; /* -1: leaf */
	Q thr;
	int left = -1, right = -1;
	vec<Q> leaf; /* leaf: one constant per output of this tree */

	bool is_leaf() const { return feat < 0; }
};

struct tree {

	vec<int> outs; /* indices into model outputs */
	vec<tree_node> nodes; /* root at 0 */
};

struct monomial {

	vec<unsigned> exps; /* aligned with model features */
	Q coef;
};

struct model_def {

	enum kind { EXPRESSION, POLYNOMIAL, TREE } k = EXPRESSION;
	vec<str> features; /* inputs and knobs, in declaration order */
	vec<str> outputs;
	vec<eptr> exprs;          /* EXPRESSION: one per output */
	vec<vec<monomial>> polys; /* POLYNOMIAL: one list per output */
	vec<tree> trees;          /* TREE: one shared or one per output */

	int feature_id(strview name) const
	{
		for (size_t i = 0; i < features.size(); i++)
			if (features[i] == name)
				return (int)i;
		return -1;
	}
};

/* ----------------------------------------------------------------------
 * evaluation
 * -------------------------------------------------------------------- */

namespace detail {

inline const tree_node &descend(const tree &t, const vec<Q> &x)
{
	int n = 0;
	for (;;) {
		const tree_node &nd = t.nodes[n];
		if (nd.is_leaf())
			return nd;
		n = x[nd.feat] <= nd.thr ? nd.left : nd.right;
	}
}

inline eptr poly_expr(const model_def &m, const vec<monomial> &p)
{
	eptr sum;
	for (const monomial &mo : p) {
		eptr term = mk_cnst(mo.coef);
		for (size_t f = 0; f < mo.exps.size(); f++)
			for (unsigned e = 0; e < mo.exps[f]; e++)
				term = mk2(eop::MUL, term,
				           mk_var(m.features[f]));
		sum = sum ? mk2(eop::ADD, sum, term) : term;
	}
	return sum ? sum : mk_cnst(Q(0));
}

} // namespace detail

/* evaluate all outputs at a feature assignment */
inline hmap<str,Q> eval_model(const model_def &m, const hmap<str,Q> &asgn)
{
	vec<Q> x;
	x.reserve(m.features.size());
	for (const str &f : m.features) {
		auto it = asgn.find(f);
		if (it == asgn.end())
			die("no value for model feature '%s'", f.c_str());
		x.push_back(it->second);
	}
	hmap<str,Q> out;
	switch (m.k) {
	case model_def::EXPRESSION:
		for (size_t j = 0; j < m.outputs.size(); j++)
			out[m.outputs[j]] = eval_num(m.exprs[j], asgn);
		break;
	case model_def::POLYNOMIAL:
		for (size_t j = 0; j < m.outputs.size(); j++) {
			Q v(0);
			for (const monomial &mo : m.polys[j]) {
				Q t = mo.coef;
				for (size_t f = 0; f < mo.exps.size(); f++)
					for (unsigned e = 0; e < mo.exps[f]; e++)
						t *= x[f];
				v += t;
			}
			out[m.outputs[j]] = move(v);
		}
		break;
	case model_def::TREE:
		for (const tree &t : m.trees) {
			const tree_node &leaf = detail::descend(t, x);
			for (size_t i = 0; i < t.outs.size(); i++)
				out[m.outputs[t.outs[i]]] = leaf.leaf[i];
		}
		break;
	}
	return out;
}

/* ----------------------------------------------------------------------
 * encoding as a formula over features and outputs
 * -------------------------------------------------------------------- */

inline fptr model_formula(const model_def &m)
{
	vec<fptr> conj;
	switch (m.k) {
	case model_def::EXPRESSION:
		/* via formula_of so conditionals inside the expression are
		 * lifted into guarded cases */
		for (size_t j = 0; j < m.outputs.size(); j++)
			conj.push_back(formula_of(mk2(eop::EQ,
				mk_var(m.outputs[j]), m.exprs[j])));
		break;
	case model_def::POLYNOMIAL:
		for (size_t j = 0; j < m.outputs.size(); j++)
			conj.push_back(formula_of(mk2(eop::EQ,
				mk_var(m.outputs[j]),
				detail::poly_expr(m, m.polys[j]))));
		break;
	case model_def::TREE:
		for (const tree &t : m.trees) {
			/* disjunction over root-to-leaf paths */
			vec<fptr> leaves;
			vec<fptr> path;
			auto walk = [&](auto &&self, int n) -> void {
				const tree_node &nd = t.nodes[n];
				if (nd.is_leaf()) {
					vec<fptr> c = path;
					for (size_t i = 0; i < t.outs.size(); i++)
						c.push_back(f_atom(acmp::EQ,
							mk2(eop::SUB,
							    mk_var(m.outputs[t.outs[i]]),
							    mk_cnst(nd.leaf[i]))));
					leaves.push_back(f_all(move(c)));
					return;
				}
				eptr x = mk_var(m.features[nd.feat]);
				path.push_back(f_atom(acmp::LE,
					mk2(eop::SUB, x, mk_cnst(nd.thr))));
				self(self, nd.left);
				path.pop_back();
				path.push_back(f_atom(acmp::LT,
					mk2(eop::SUB, mk_cnst(nd.thr), x)));
				self(self, nd.right);
				path.pop_back();
			};
			walk(walk, 0);
			conj.push_back(f_any(move(leaves)));
		}
		break;
	}
	return f_all(move(conj));
}

/* ----------------------------------------------------------------------
 * interval bounds of the outputs over a feature box
 * -------------------------------------------------------------------- */

namespace detail {

inline opt<xiv> xpow_iv(const opt<xiv> &a, long n)
{
	if (!a)
		return std::nullopt;
	if (n == 0)
		return xiv(Q(1));
	bool inv = n < 0;
	unsigned long u = inv ? -(unsigned long)n : (unsigned long)n;
	xiv r(Q(1));
	xiv b = *a;
	while (u) {
		if (u & 1)
			r = xmul(r, b);
		b = xmul(b, b);
		u >>= 1;
	}
	if (inv)
		return xdiv(xiv(Q(1)), r);
	return r;
}

inline opt<xiv> interval_eval(const eptr &e, const hmap<str,xiv> &env)
{
	switch (e->op) {
	case eop::CNST:
		return xiv(e->value);
	case eop::VAR: {
		auto it = env.find(e->var);
		if (it == env.end())
			die("no interval for variable '%s'", e->var.c_str());
		return it->second;
	}
	case eop::NEG: {
		opt<xiv> a = interval_eval(e->a, env);
		return a ? opt<xiv>(xneg(*a)) : std::nullopt;
	}
	case eop::ADD: case eop::SUB: case eop::MUL: case eop::DIV: {
		opt<xiv> a = interval_eval(e->a, env);
		opt<xiv> b = interval_eval(e->b, env);
		if (!a || !b)
			return std::nullopt;
		switch (e->op) {
		case eop::ADD: return xadd(*a, *b);
		case eop::SUB: return xsub(*a, *b);
		case eop::MUL: return xmul(*a, *b);
		default: return xdiv(*a, *b);
		}
	}
	case eop::POW: {
		if (!expr_vars(e->b).empty())
			die("exponent must be constant in '%s'",
			    expr_str(e).c_str());
		Q p = eval_num(e->b, {});
		if (!q_is_int(p) || q_abs(p) > 64)
			die("unsupported exponent in '%s'",
			    expr_str(e).c_str());
		return xpow_iv(interval_eval(e->a, env),
		               p.get_num().get_si());
	}
	case eop::ITE: {
		/* hull of both branches */
		opt<xiv> a = interval_eval(e->a, env);
		opt<xiv> b = interval_eval(e->b, env);
		if (!a)
			return b;
		if (!b)
			return a;
		opt<Q> lo, hi;
		if (a->lo && b->lo)
			lo = std::min(*a->lo, *b->lo);
		if (a->hi && b->hi)
			hi = std::max(*a->hi, *b->hi);
		return xiv(lo, hi);
	}
	default:
		die("cannot bound non-arithmetic term '%s'",
		    expr_str(e).c_str());
	}
}

} // namespace detail

/* bounded enclosure of each output over the given feature box, padded
 * by pad on both sides */
inline vec<pair<str,ival>> output_ranges(const model_def &m,
                                         const vec<pair<str,ival>> &feat_box,
                                         const Q &pad)
{
	hmap<str,xiv> env;
	hmap<str,ival> fb;
	for (const auto &[n, v] : feat_box) {
		env[n] = xiv(v);
		fb[n] = v;
	}
	vec<pair<str,ival>> out;
	auto push = [&](const str &name, const opt<xiv> &r) {
		if (!r || !r->bounded())
			die("cannot bound model output '%s' on the given "
			    "domain", name.c_str());
		out.emplace_back(name, ival(*r->lo - pad, *r->hi + pad));
	};
	switch (m.k) {
	case model_def::EXPRESSION:
		for (size_t j = 0; j < m.outputs.size(); j++)
			push(m.outputs[j],
			     detail::interval_eval(m.exprs[j], env));
		break;
	case model_def::POLYNOMIAL:
		for (size_t j = 0; j < m.outputs.size(); j++)
			push(m.outputs[j],
			     detail::interval_eval(
				detail::poly_expr(m, m.polys[j]), env));
		break;
	case model_def::TREE:
		for (const tree &t : m.trees) {
			/* hull over the leaves reachable within the box */
			vec<opt<ival>> acc(t.outs.size());
			vec<int> st = { 0 };
			while (!st.empty()) {
				const tree_node &nd = t.nodes[st.back()];
				st.pop_back();
				if (nd.is_leaf()) {
					for (size_t i = 0; i < t.outs.size(); i++) {
						const Q &v = nd.leaf[i];
						if (!acc[i])
							acc[i] = ival(v);
						else
							acc[i] = ival(
								std::min(acc[i]->lo, v),
								std::max(acc[i]->hi, v));
					}
					continue;
				}
				const ival &fx = fb[m.features[nd.feat]];
				if (fx.lo <= nd.thr)
					st.push_back(nd.left);
				if (fx.hi > nd.thr)
					st.push_back(nd.right);
			}
			for (size_t i = 0; i < t.outs.size(); i++) {
				if (!acc[i])
					die("no reachable leaf for output '%s'",
					    m.outputs[t.outs[i]].c_str());
				out.emplace_back(m.outputs[t.outs[i]],
					ival(acc[i]->lo - pad,
					     acc[i]->hi + pad));
			}
		}
		break;
	}
	return out;
}

/* ----------------------------------------------------------------------
 * regression tree fitting (variance reduction, exact arithmetic)
 * -------------------------------------------------------------------- */

namespace detail {

struct tree_builder {

	const dataset &d;
	const vec<int> &fcols;
	const vec<int> &rcols;
	int max_depth;
	tree t;

	Q sse(const vec<size_t> &rows, int rc) const
	{
		Q sum(0), sq(0);
		for (size_t r : rows) {
			const Q &y = d.rows[r][rc];
			sum += y;
			sq += y * y;
		}
		/* sum (y - mean)^2 = sum y^2 - (sum y)^2 / n */
		return sq - sum * sum / (long)rows.size();
	}

	Q total_sse(const vec<size_t> &rows) const
	{
		Q s(0);
		for (int rc : rcols)
			s += sse(rows, rc);
		return s;
	}

	int build(vec<size_t> rows, int depth)
	{
		int best_f = -1;
		Q best_thr(0), best_after(0);
		Q before = total_sse(rows);
		if (depth < max_depth && rows.size() >= 2 && sgn(before) > 0) {
			for (size_t fi = 0; fi < fcols.size(); fi++) {
				vec<Q> vals;
				vals.reserve(rows.size());
				for (size_t r : rows)
					vals.push_back(d.rows[r][fcols[fi]]);
				std::sort(vals.begin(), vals.end());
				vals.erase(std::unique(vals.begin(), vals.end()),
				           vals.end());
				for (size_t i = 0; i+1 < vals.size(); i++) {
					Q thr = (vals[i] + vals[i+1]) / 2;
					vec<size_t> l, r;
					for (size_t row : rows)
						(d.rows[row][fcols[fi]] <= thr
						 ? l : r).push_back(row);
					Q after = total_sse(l) + total_sse(r);
					if (best_f < 0 || after < best_after) {
						best_f = (int)fi;
						best_thr = thr;
						best_after = after;
					}
				}
			}
		}
		if (best_f < 0 || best_after >= before) {
			/* leaf: per-response mean */
			tree_node leaf;
			for (int rc : rcols) {
				Q sum(0);
				for (size_t r : rows)
					sum += d.rows[r][rc];
				leaf.leaf.push_back(sum / (long)rows.size());
			}
			t.nodes.push_back(move(leaf));
			return (int)t.nodes.size() - 1;
		}
		vec<size_t> l, r;
		for (size_t row : rows)
			(d.rows[row][fcols[best_f]] <= best_thr ? l : r)
				.push_back(row);
		int id = (int)t.nodes.size();
		t.nodes.emplace_back();
		t.nodes[id].feat = best_f;
		t.nodes[id].thr = best_thr;
		int left = build(move(l), depth+1);
		int right = build(move(r), depth+1);
		t.nodes[id].left = left;
		t.nodes[id].right = right;
		return id;
	}
};

} // namespace detail

/* Fit one regression tree per response (per_response) or one shared
 * tree minimizing the summed squared error across responses. */
inline model_def fit_tree(const dataset &d, const vec<str> &features,
                          const vec<str> &responses, bool per_response,
                          int max_depth = 15)
{
	if (!d.nrows())
		die("cannot fit a model to empty data");
	model_def m;
	m.k = model_def::TREE;
	m.features = features;
	m.outputs = responses;
	vec<int> fcols, rcols;
	for (const str &f : features)
		fcols.push_back(d.col_req(f));
	for (const str &r : responses)
		rcols.push_back(d.col_req(r));
	vec<size_t> all(d.nrows());
	for (size_t i = 0; i < all.size(); i++)
		all[i] = i;
	if (per_response) {
		for (size_t j = 0; j < responses.size(); j++) {
			vec<int> rc = { rcols[j] };
			detail::tree_builder b{ d, fcols, rc, max_depth, {} };
			b.t.outs = { (int)j };
			b.build(all, 0); /* root lands at index 0 */
			m.trees.push_back(move(b.t));
		}
	} else {
		detail::tree_builder b{ d, fcols, rcols, max_depth, {} };
		for (size_t j = 0; j < responses.size(); j++)
			b.t.outs.push_back((int)j);
		b.build(all, 0);
		m.trees.push_back(move(b.t));
	}
	return m;
}

/* ----------------------------------------------------------------------
 * polynomial least squares (normal equations, exact arithmetic)
 * -------------------------------------------------------------------- */

/* all exponent vectors of total degree <= deg, graded lexicographic */
inline vec<vec<unsigned>> monomial_exponents(size_t nfeat, unsigned deg)
{
	vec<vec<unsigned>> out;
	vec<unsigned> cur(nfeat, 0);
	for (unsigned total = 0; total <= deg; total++) {
		/* enumerate compositions of 'total' into nfeat parts */
		std::fill(cur.begin(), cur.end(), 0);
		if (!nfeat) {
			if (!total)
				out.push_back(cur);
			continue;
		}
		cur[0] = total;
		for (;;) {
			out.push_back(cur);
			/* next composition in lexicographic order */
			size_t i = 0;
			while (i+1 < nfeat && cur[i] == 0)
				i++;
			if (i+1 >= nfeat)
				break;
			unsigned head = cur[i];
			cur[i] = 0;
			cur[i+1]++;
			cur[0] = head - 1;
		}
	}
	return out;
}

struct poly_fit {

	model_def m;
	vec<Q> residual; /* summed squared error per response */
};

inline poly_fit fit_polynomial(const dataset &d, const vec<str> &features,
                               const vec<str> &responses, unsigned degree)
{
	if (!d.nrows())
		die("cannot fit a model to empty data");
	vec<int> fcols, rcols;
	for (const str &f : features)
		fcols.push_back(d.col_req(f));
	for (const str &r : responses)
		rcols.push_back(d.col_req(r));
	vec<vec<unsigned>> mons = monomial_exponents(features.size(), degree);
	size_t nm = mons.size(), n = d.nrows(), nr = responses.size();
	if (n < nm)
		die("polynomial fit of degree %u needs at least %zu rows, "
		    "got %zu", degree, nm, n);
	/* design matrix */
	vec<vec<Q>> A(n, vec<Q>(nm));
	for (size_t r = 0; r < n; r++)
		for (size_t j = 0; j < nm; j++) {
			Q v(1);
			for (size_t f = 0; f < fcols.size(); f++)
				for (unsigned e = 0; e < mons[j][f]; e++)
					v *= d.rows[r][fcols[f]];
			A[r][j] = move(v);
		}
	/* normal equations, one shared matrix, one rhs per response */
	vec<vec<Q>> M(nm, vec<Q>(nm + nr, Q(0)));
	for (size_t i = 0; i < nm; i++)
		for (size_t j = i; j < nm; j++) {
			Q s(0);
			for (size_t r = 0; r < n; r++)
				s += A[r][i] * A[r][j];
			M[i][j] = s;
			M[j][i] = move(s);
		}
	for (size_t i = 0; i < nm; i++)
		for (size_t k = 0; k < nr; k++) {
			Q s(0);
			for (size_t r = 0; r < n; r++)
				s += A[r][i] * d.rows[r][rcols[k]];
			M[i][nm + k] = move(s);
		}
	/* Gaussian elimination with partial pivoting */
	for (size_t col = 0; col < nm; col++) {
		size_t piv = col;
		for (size_t r = col+1; r < nm; r++)
			if (q_abs(M[r][col]) > q_abs(M[piv][col]))
				piv = r;
		if (sgn(M[piv][col]) == 0)
			die("polynomial fit is rank-deficient; lower the "
			    "degree or provide more varied data");
		if (piv != col)
			std::swap(M[piv], M[col]);
		for (size_t r = 0; r < nm; r++) {
			if (r == col || sgn(M[r][col]) == 0)
				continue;
			Q f = M[r][col] / M[col][col];
			for (size_t j = col; j < nm + nr; j++)
				M[r][j] -= f * M[col][j];
		}
	}
	poly_fit out;
	out.m.k = model_def::POLYNOMIAL;
	out.m.features = features;
	out.m.outputs = responses;
	out.m.polys.resize(nr);
	for (size_t k = 0; k < nr; k++)
		for (size_t j = 0; j < nm; j++) {
			Q c = M[j][nm + k] / M[j][j];
			if (sgn(c) != 0)
				out.m.polys[k].push_back({ mons[j], move(c) });
		}
	for (size_t k = 0; k < nr; k++) {
		Q sse(0);
		for (size_t r = 0; r < n; r++) {
			Q pred(0);
			for (const monomial &mo : out.m.polys[k]) {
				Q t = mo.coef;
				for (size_t f = 0; f < fcols.size(); f++)
					for (unsigned e = 0; e < mo.exps[f]; e++)
						t *= d.rows[r][fcols[f]];
				pred += t;
			}
			Q diff = pred - d.rows[r][rcols[k]];
			sse += diff * diff;
		}
		out.residual.push_back(move(sse));
	}
	return out;
}

/* ----------------------------------------------------------------------
 * closed-form models
 * -------------------------------------------------------------------- */

inline model_def expression_model(const vec<str> &features,
                                  const named_exprs &defs)
{
	model_def m;
	m.k = model_def::EXPRESSION;
	m.features = features;
	for (const auto &[name, e] : defs) {
		for (const str &v : expr_vars(e))
			if (m.feature_id(v) < 0)
				die("definition of '%s' uses '%s', which is "
				    "not a model feature", name.c_str(),
				    v.c_str());
		m.outputs.push_back(name);
		m.exprs.push_back(e);
	}
	return m;
}

/* ----------------------------------------------------------------------
 * model persistence (exact round-trip)
 * -------------------------------------------------------------------- */

inline void save_model(const model_def &m, const str &path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		die("cannot write '%s'", path.c_str());
	auto jstr = [](const str &s) { return "\"" + s + "\""; };
	out << "{\n  \"type\": ";
	out << (m.k == model_def::EXPRESSION ? "\"expression\"" :
	        m.k == model_def::POLYNOMIAL ? "\"polynomial\"" : "\"tree\"");
	out << ",\n  \"features\": [";
	for (size_t i = 0; i < m.features.size(); i++)
		out << (i ? ", " : "") << jstr(m.features[i]);
	out << "],\n  \"outputs\": [";
	for (size_t i = 0; i < m.outputs.size(); i++)
		out << (i ? ", " : "") << jstr(m.outputs[i]);
	out << "]";
	switch (m.k) {
	case model_def::EXPRESSION:
		out << ",\n  \"expressions\": {";
		for (size_t i = 0; i < m.outputs.size(); i++)
			out << (i ? ", " : "") << jstr(m.outputs[i]) << ": "
			    << jstr(expr_str(m.exprs[i]));
		out << "}";
		break;
	case model_def::POLYNOMIAL:
		out << ",\n  \"polynomials\": {";
		for (size_t i = 0; i < m.outputs.size(); i++) {
			out << (i ? ",\n    " : "\n    ")
			    << jstr(m.outputs[i]) << ": [";
			const vec<monomial> &p = m.polys[i];
			for (size_t j = 0; j < p.size(); j++) {
				out << (j ? ", " : "") << "{\"coef\": "
				    << jstr(q_str(p[j].coef)) << ", \"exps\": [";
				for (size_t f = 0; f < p[j].exps.size(); f++)
					out << (f ? ", " : "") << p[j].exps[f];
				out << "]}";
			}
			out << "]";
		}
		out << "\n  }";
		break;
	case model_def::TREE:
		out << ",\n  \"trees\": [";
		for (size_t ti = 0; ti < m.trees.size(); ti++) {
			const tree &t = m.trees[ti];
			out << (ti ? ",\n    " : "\n    ") << "{\"outputs\": [";
			for (size_t i = 0; i < t.outs.size(); i++)
				out << (i ? ", " : "")
				    << jstr(m.outputs[t.outs[i]]);
			out << "], \"nodes\": [";
			for (size_t n = 0; n < t.nodes.size(); n++) {
				const tree_node &nd = t.nodes[n];
				out << (n ? ", " : "");
				if (nd.is_leaf()) {
					out << "{\"leaf\": [";
					for (size_t i = 0; i < nd.leaf.size(); i++)
						out << (i ? ", " : "")
						    << jstr(q_str(nd.leaf[i]));
					out << "]}";
				} else
					out << "{\"feature\": "
					    << jstr(m.features[nd.feat])
					    << ", \"threshold\": "
					    << jstr(q_str(nd.thr))
					    << ", \"left\": " << nd.left
					    << ", \"right\": " << nd.right << "}";
			}
			out << "]}";
		}
		out << "\n  ]";
		break;
	}
	out << "\n}\n";
	if (!out.flush())
		die("error writing '%s'", path.c_str());
}

inline model_def load_model(const str &path)
{
	jval j = load_json_file(path);
	const char *c = path.c_str();
	model_def m;
	const str &ty = j.at("type", c).as_str(c);
	for (const jval &f : j.at("features", c).as_arr(c))
		m.features.push_back(f.as_str(c));
	for (const jval &o : j.at("outputs", c).as_arr(c))
		m.outputs.push_back(o.as_str(c));
	auto num_of = [&](const jval &v) -> Q {
		if (v.k == jval::NUM)
			return v.num;
		return parse_q(v.as_str(c));
	};
	if (ty == "expression") {
		m.k = model_def::EXPRESSION;
		const jval &ex = j.at("expressions", c);
		for (const str &o : m.outputs)
			m.exprs.push_back(parse_expr(ex.at(o, c).as_str(c)));
	} else if (ty == "polynomial") {
		m.k = model_def::POLYNOMIAL;
		const jval &ps = j.at("polynomials", c);
		for (const str &o : m.outputs) {
			vec<monomial> p;
			for (const jval &mo : ps.at(o, c).as_arr(c)) {
				monomial mn;
				mn.coef = num_of(mo.at("coef", c));
				for (const jval &e : mo.at("exps", c).as_arr(c))
					mn.exps.push_back(
						(unsigned)e.as_num(c).get_num()
							.get_ui());
				if (mn.exps.size() != m.features.size())
					die("%s: monomial arity mismatch", c);
				p.push_back(move(mn));
			}
			m.polys.push_back(move(p));
		}
	} else if (ty == "tree") {
		m.k = model_def::TREE;
		for (const jval &tj : j.at("trees", c).as_arr(c)) {
			tree t;
			for (const jval &o : tj.at("outputs", c).as_arr(c)) {
				const str &name = o.as_str(c);
				int id = -1;
				for (size_t i = 0; i < m.outputs.size(); i++)
					if (m.outputs[i] == name)
						id = (int)i;
				if (id < 0)
					die("%s: unknown tree output '%s'", c,
					    name.c_str());
				t.outs.push_back(id);
			}
			for (const jval &nj : tj.at("nodes", c).as_arr(c)) {
				tree_node nd;
				if (const jval *leaf = nj.find("leaf")) {
					for (const jval &v : leaf->as_arr(c))
						nd.leaf.push_back(num_of(v));
					if (nd.leaf.size() != t.outs.size())
						die("%s: leaf arity mismatch", c);
				} else {
					const str &fn = nj.at("feature", c)
						.as_str(c);
					nd.feat = m.feature_id(fn);
					if (nd.feat < 0)
						die("%s: unknown feature '%s'",
						    c, fn.c_str());
					nd.thr = num_of(nj.at("threshold", c));
					nd.left = (int)nj.at("left", c)
						.as_num(c).get_num().get_si();
					nd.right = (int)nj.at("right", c)
						.as_num(c).get_num().get_si();
				}
				t.nodes.push_back(move(nd));
			}
			if (t.nodes.empty())
				die("%s: empty tree", c);
			m.trees.push_back(move(t));
		}
	} else
		die("%s: unknown model type '%s'", c, ty.c_str());
	return m;
}

/* ----------------------------------------------------------------------
 * data ranges of named expressions (row-wise, exact)
 * -------------------------------------------------------------------- */

inline vec<pair<Q,Q>> objective_bounds(const dataset &d,
                                       const named_exprs &objectives)
{
	if (!d.nrows())
		die("cannot compute data bounds on empty data");
	vec<pair<Q,Q>> out;
	for (const auto &[name, e] : objectives) {
		opt<Q> mn, mx;
		for (size_t r = 0; r < d.nrows(); r++) {
			Q v = eval_num(e, d.row_assignment(r));
			if (!mn || v < *mn)
				mn = v;
			if (!mx || v > *mx)
				mx = v;
		}
		out.emplace_back(*mn, *mx);
	}
	return out;
}

} // namespace smlp

#endif
