/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#ifndef SMLP_CLI_HH
#define SMLP_CLI_HH

#include <smlp/explore.hh>
#include <smlp/doe.hh>
#include <smlp/refine.hh>

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace smlp {

namespace fs = std::filesystem;

/* ----------------------------------------------------------------------
 * flag parsing: single-dash long options, every flag takes one value,
 * booleans written t/f
 * -------------------------------------------------------------------- */

struct cli_args {

	str data, new_data, spec, out_dir, pref, mode;
	str model = "";            /* dt | poly | system */
	str model_name;
	str alpha, beta, eta;      /* override expressions, raw text */
	str asrt_names, asrt_exprs;
	str quer_names, quer_exprs;
	str objv_names, objv_exprs;
	str doe_spec, doe_algo;
	opt<vec<str>> resp, feat;
	opt<Q> epsilon, delta_rel;
	opt<size_t> doe_num_samples;
	uint64_t seed = 0;
	bool model_per_response = false;
	bool pareto = false;
	bool save_model = false;
	bool use_model = false;
	int max_depth = 15;
	int poly_degree = 2;
};

namespace detail {

inline vec<str> split_list(strview s, char sep)
{
	vec<str> out;
	size_t pos = 0;
	while (pos <= s.size()) {
		size_t e = s.find(sep, pos);
		if (e == strview::npos)
			e = s.size();
		strview item = s.substr(pos, e - pos);
		while (!item.empty() && isspace((unsigned char)item.front()))
			item.remove_prefix(1);
		while (!item.empty() && isspace((unsigned char)item.back()))
			item.remove_suffix(1);
		if (!item.empty())
			out.emplace_back(item);
		pos = e + 1;
	}
	return out;
}

inline bool bool_of(const str &flag, const str &v)
{
	if (v == "t" || v == "true" || v == "1")
		return true;
	if (v == "f" || v == "false" || v == "0")
		return false;
	die("%s: expected t or f, got '%s'", flag.c_str(), v.c_str());
}

inline uint64_t u64_of(const str &flag, const str &v)
{
	errno = 0;
	char *end = nullptr;
	unsigned long long r = strtoull(v.c_str(), &end, 10);
	if (errno || !end || *end || end == v.c_str())
		die("%s: expected an unsigned integer, got '%s'",
		    flag.c_str(), v.c_str());
	return r;
}

inline int int_of(const str &flag, const str &v)
{
	errno = 0;
	char *end = nullptr;
	long r = strtol(v.c_str(), &end, 10);
	if (errno || !end || *end || end == v.c_str() ||
	    r < INT_MIN || r > INT_MAX)
		die("%s: expected an integer, got '%s'", flag.c_str(),
		    v.c_str());
	return (int)r;
}

inline Q q_of(const str &flag, const str &v)
{
	opt<Q> q = try_parse_q(v);
	if (!q)
		die("%s: expected a number, got '%s'", flag.c_str(),
		    v.c_str());
	return *q;
}

inline bool looks_like_flag(const char *s)
{
	return s && s[0] == '-' &&
	       (isalpha((unsigned char)s[1]) || s[1] == '-');
}

} // namespace detail

inline const char *cli_usage =
"usage: smlp -mode MODE [options]\n"
"\n"
"modes: train predict certify query verify synthesize optimize optsyn doe\n"
"\n"
"common options (all flags take one value; booleans are t/f):\n"
"  -data FILE           training data .csv[.gz] (suffix may be omitted)\n"
"  -new_data FILE       new data .csv[.gz] for prediction\n"
"  -spec FILE           problem spec (.spec, JSON); required in modes\n"
"                       certify/query/verify/synthesize/optimize/optsyn\n"
"  -out_dir DIR         output directory (default: data/new-data/DOE dir)\n"
"  -pref NAME           run id; output files start with NAME_<input-stem>\n"
"  -resp y1,y2          response (output) columns\n"
"  -feat x1,p1          feature columns\n"
"  -model KIND          dt | poly | system (dt_sklearn/poly_sklearn ok)\n"
"  -model_per_response B  one tree per response (t) or a shared tree (f)\n"
"  -save_model B / -use_model B / -model_name NAME\n"
"  -alpha/-beta/-eta E  constraint expressions overriding the spec\n"
"  -asrt_names a1,a2 / -asrt_exprs 'e1;e2'   assertions\n"
"  -quer_names q1,q2 / -quer_exprs 'e1;e2'   queries\n"
"  -objv_names o1,o2 / -objv_exprs 'e1;e2'   objectives\n"
"  -pareto B            pareto (joint) multi-objective optimization\n"
"  -epsilon Q           optimization threshold accuracy (default 1/20)\n"
"  -delta_rel Q         stability/solver tolerance delta\n"
"  -seed N              RNG seed (doe sampling)\n"
"  -doe_spec FILE / -doe_algo NAME / -doe_num_samples N\n"
"  -log_time B          timestamps on log lines\n";

inline cli_args parse_cli(int argc, char **argv)
{
	using namespace detail;
	cli_args a;
	int i = 1;
	auto val = [&](const str &flag) -> str {
		if (i >= argc)
			die("%s: missing value", flag.c_str());
		return argv[i++];
	};
	while (i < argc) {
		str f = argv[i++];
		if (f == "-h" || f == "--help" || f == "-help") {
			fputs(cli_usage, stdout);
			exit(0);
		} else if (f == "-data") {
			a.data = val(f);
		} else if (f == "-new_data") {
			a.new_data = val(f);
		} else if (f == "-spec") {
			a.spec = val(f);
		} else if (f == "-out_dir") {
			a.out_dir = val(f);
		} else if (f == "-pref") {
			a.pref = val(f);
		} else if (f == "-mode") {
			a.mode = val(f);
		} else if (f == "-resp") {
			a.resp = split_list(val(f), ',');
		} else if (f == "-feat") {
			a.feat = split_list(val(f), ',');
		} else if (f == "-model") {
			str m = val(f);
			if (m == "dt_sklearn")
				m = "dt";
			else if (m == "poly_sklearn")
				m = "poly";
			if (m != "dt" && m != "poly" && m != "system")
				die("-model: expected dt, poly or system, "
				    "got '%s'", m.c_str());
			a.model = m;
		} else if (f == "-model_per_response") {
			a.model_per_response = bool_of(f, val(f));
		} else if (f == "-pareto") {
			a.pareto = bool_of(f, val(f));
		} else if (f == "-epsilon") {
			a.epsilon = q_of(f, val(f));
		} else if (f == "-delta_rel") {
			a.delta_rel = q_of(f, val(f));
		} else if (f == "-seed") {
			a.seed = u64_of(f, val(f));
		} else if (f == "-alpha") {
			a.alpha = val(f);
		} else if (f == "-beta") {
			a.beta = val(f);
		} else if (f == "-eta") {
			a.eta = val(f);
		} else if (f == "-asrt_names") {
			a.asrt_names = val(f);
		} else if (f == "-asrt_exprs") {
			a.asrt_exprs = val(f);
		} else if (f == "-quer_names") {
			a.quer_names = val(f);
		} else if (f == "-quer_exprs") {
			a.quer_exprs = val(f);
		} else if (f == "-objv_names") {
			a.objv_names = val(f);
		} else if (f == "-objv_exprs") {
			a.objv_exprs = val(f);
		} else if (f == "-doe_spec") {
			a.doe_spec = val(f);
		} else if (f == "-doe_algo") {
			a.doe_algo = val(f);
		} else if (f == "-doe_num_samples") {
			a.doe_num_samples = u64_of(f, val(f));
		} else if (f == "-save_model") {
			a.save_model = bool_of(f, val(f));
		} else if (f == "-use_model") {
			a.use_model = bool_of(f, val(f));
		} else if (f == "-model_name") {
			a.model_name = val(f);
		} else if (f == "-log_time") {
			log_timestamps = bool_of(f, val(f));
		} else if (f == "-dt_sklearn_max_depth") {
			a.max_depth = int_of(f, val(f));
		} else if (f == "-poly_degree" ||
		           f == "-poly_sklearn_degree") {
			a.poly_degree = int_of(f, val(f));
		} else if (looks_like_flag(f.c_str())) {
			/* unknown flag: warn, skip its value if one follows */
			if (i < argc && !looks_like_flag(argv[i])) {
				warn("ignoring unsupported option %s %s",
				     f.c_str(), argv[i]);
				i++;
			} else {
				warn("ignoring unsupported option %s",
				     f.c_str());
			}
		} else {
			die("unexpected argument '%s' (flags are single-dash, "
			    "e.g. -mode optimize)", f.c_str());
		}
	}
	if (a.mode.empty())
		die("missing required option -mode");
	return a;
}

/* ----------------------------------------------------------------------
 * input/output paths
 * -------------------------------------------------------------------- */

namespace detail {

/* "-data foo" may omit the .csv suffix when the file is uncompressed */
inline str resolve_data_path(const str &given)
{
	if (fs::exists(given))
		return given;
	for (const char *suf : { ".csv", ".csv.gz" }) {
		str p = given + suf;
		if (fs::exists(p))
			return p;
	}
	die("data file '%s' not found (also tried .csv, .csv.gz)",
	    given.c_str());
}

inline str dir_of(const str &path)
{
	str d = fs::path(path).parent_path().string();
	return d.empty() ? str(".") : d;
}

/* file name without directory, .gz/.csv/.spec/.json suffixes stripped */
inline str stem_of(const str &path)
{
	str n = fs::path(path).filename().string();
	auto strip = [&](strview suf) {
		if (n.size() > suf.size() &&
		    strview(n).substr(n.size() - suf.size()) == suf)
			n.resize(n.size() - suf.size());
	};
	strip(".gz");
	strip(".csv");
	strip(".spec");
	strip(".json");
	return n;
}

inline void write_text(const str &path, const str &text)
{
	std::ofstream f(path, std::ios::binary);
	if (!f)
		die("cannot write '%s'", path.c_str());
	f << text;
	if (!f.good())
		die("write to '%s' failed", path.c_str());
}

} // namespace detail

/* -out_dir (created if missing), else the data file's directory, else
 * the new-data file's, else the DOE spec file's */
inline str resolve_out_dir(const cli_args &a)
{
	if (!a.out_dir.empty()) {
		std::error_code ec;
		fs::create_directories(a.out_dir, ec);
		return a.out_dir;
	}
	if (!a.data.empty())
		return detail::dir_of(a.data);
	if (!a.new_data.empty())
		return detail::dir_of(a.new_data);
	if (!a.doe_spec.empty())
		return detail::dir_of(a.doe_spec);
	if (!a.spec.empty())
		return detail::dir_of(a.spec);
	die("no output directory: pass -out_dir (or -data/-new_data/"
	    "-doe_spec, whose directory would be used)");
}

/* run prefix: <pref>_<stem of data | new data | saved model | doe spec> */
inline str run_prefix(const cli_args &a)
{
	using namespace detail;
	str stem;
	if (!a.data.empty())
		stem = stem_of(a.data);
	else if (!a.new_data.empty())
		stem = stem_of(a.new_data);
	else if (a.use_model && !a.model_name.empty())
		stem = stem_of(a.model_name);
	else if (!a.doe_spec.empty())
		stem = stem_of(a.doe_spec);
	else if (!a.spec.empty())
		stem = stem_of(a.spec);
	else
		die("cannot derive output file names: pass -data, "
		    "-new_data, -doe_spec or -spec");
	return a.pref.empty() ? stem : a.pref + "_" + stem;
}

/* ----------------------------------------------------------------------
 * assembling named expression lists (CLI overrides the spec)
 * -------------------------------------------------------------------- */

namespace detail {

/* names: comma-separated; exprs: semicolon-separated */
inline vec<pair<str,str>> named_raw(const str &names, const str &exprs,
                                    const char *tag)
{
	if (exprs.empty()) {
		if (!names.empty())
			die("-%s_names given without -%s_exprs", tag, tag);
		return {};
	}
	vec<str> es = split_list(exprs, ';');
	vec<str> ns = names.empty() ? vec<str>{} : split_list(names, ',');
	if (!ns.empty() && ns.size() != es.size())
		die("-%s_names lists %zu names but -%s_exprs %zu "
		    "expressions", tag, ns.size(), tag, es.size());
	vec<pair<str,str>> out;
	for (size_t i = 0; i < es.size(); i++) {
		str n = ns.empty() ? str(tag) + std::to_string(i + 1)
		                   : ns[i];
		out.emplace_back(move(n), es[i]);
	}
	return out;
}

inline named_exprs parse_named(const problem_spec &sp,
                               const vec<pair<str,str>> &raw, slot sl,
                               ety want, const char *what)
{
	named_exprs out;
	for (const auto &[n, s] : raw) {
		eptr e = parse_expr(s);
		str ctx = str(what) + " '" + n + "'";
		check_slot(sp, e, sl, want, ctx.c_str());
		out.emplace_back(n, e);
	}
	return out;
}

} // namespace detail

/* apply -alpha, -beta, -eta and the -asrt/-quer/-objv lists on top of
 * the spec */
inline void apply_cli_overrides(problem_spec &sp, const cli_args &a)
{
	using namespace detail;
	if (!a.alpha.empty()) {
		sp.alpha = parse_expr(a.alpha);
		check_slot(sp, sp.alpha, slot::ALPHA, ety::BOOL, "-alpha");
	}
	if (!a.beta.empty()) {
		sp.beta = parse_expr(a.beta);
		check_slot(sp, sp.beta, slot::FREE, ety::BOOL, "-beta");
	}
	if (!a.eta.empty()) {
		sp.eta = parse_expr(a.eta);
		check_slot(sp, sp.eta, slot::ETA, ety::BOOL, "-eta");
	}
	if (!a.asrt_exprs.empty() || !a.asrt_names.empty())
		sp.assertions = parse_named(sp,
			named_raw(a.asrt_names, a.asrt_exprs, "asrt"),
			slot::FREE, ety::BOOL, "assertion");
	if (!a.quer_exprs.empty() || !a.quer_names.empty())
		sp.queries = parse_named(sp,
			named_raw(a.quer_names, a.quer_exprs, "quer"),
			slot::FREE, ety::BOOL, "query");
	if (!a.objv_exprs.empty() || !a.objv_names.empty())
		sp.objectives = parse_named(sp,
			named_raw(a.objv_names, a.objv_exprs, "objv"),
			slot::FREE, ety::NUM, "objective");
}

/* ----------------------------------------------------------------------
 * model acquisition
 * -------------------------------------------------------------------- */

namespace detail {

inline str saved_model_path(const cli_args &a, const str &out_dir)
{
	if (a.model_name.empty())
		die("-save_model t requires -model_name");
	str base = a.pref.empty() ? a.model_name
	                          : a.pref + "_" + a.model_name;
	return out_dir + "/" + base + "_model.json";
}

inline model_def load_saved_model(const cli_args &a)
{
	if (a.model_name.empty())
		die("-use_model t requires -model_name");
	if (fs::exists(a.model_name))
		return load_model(a.model_name);
	str p = a.model_name + "_model.json";
	if (fs::exists(p))
		return load_model(p);
	die("saved model '%s' not found (also tried '%s')",
	    a.model_name.c_str(), p.c_str());
}

/* fit a tree or polynomial model on the data per the CLI flags */
inline model_def fit_data_model(const cli_args &a, const dataset &d,
                                const vec<str> &feat, const vec<str> &resp)
{
	if (a.model == "poly")
		return fit_polynomial(d, feat, resp, a.poly_degree).m;
	if (a.model == "dt" || a.model.empty())
		return fit_tree(d, feat, resp, a.model_per_response,
		                a.max_depth);
	die("-model %s cannot be trained from data", a.model.c_str());
}

/* model features/outputs for exploration modes default to the spec's
 * inputs+knobs / outputs */
inline vec<str> explore_features(const problem_spec &sp, const cli_args &a)
{
	if (a.feat)
		return *a.feat;
	vec<str> f;
	for (const var_spec &v : sp.vars)
		if (v.kind != vkind::OUTPUT)
			f.push_back(v.name);
	return f;
}

inline vec<str> explore_responses(const problem_spec &sp, const cli_args &a)
{
	if (a.resp)
		return *a.resp;
	return sp.output_names();
}

/* the exact system the spec describes, as an expression model */
inline opt<model_def> system_model(const problem_spec &sp,
                                   const vec<str> &resp)
{
	if (sp.system.empty())
		return std::nullopt;
	named_exprs defs;
	for (const str &r : resp) {
		const eptr *e = nullptr;
		for (const auto &[n, se] : sp.system)
			if (n == r)
				e = &se;
		if (!e)
			die("spec system section has no definition for "
			    "output '%s'", r.c_str());
		defs.emplace_back(r, *e);
	}
	vec<str> feats;
	for (const var_spec &v : sp.vars)
		if (v.kind != vkind::OUTPUT)
			feats.push_back(v.name);
	return expression_model(feats, defs);
}

} // namespace detail

/* ----------------------------------------------------------------------
 * train / predict
 * -------------------------------------------------------------------- */

namespace detail {

/* msqe and r2_score per response, exact arithmetic */
inline pair<Q,Q> precision_of(const vec<Q> &actual, const vec<Q> &pred)
{
	size_t n = actual.size();
	Q sse = 0, sy = 0, syy = 0;
	for (size_t i = 0; i < n; i++) {
		Q d = pred[i] - actual[i];
		sse += d * d;
		sy += actual[i];
		syy += actual[i] * actual[i];
	}
	Q msqe = sse / (long)n;
	Q sst = syy - sy * sy / (long)n;
	Q r2 = sgn(sst) ? 1 - sse / sst : (sgn(sse) ? Q(0) : Q(1));
	return { msqe, r2 };
}

/* write <prefix>_<tag>_predictions_summary.csv and, when the data is
 * labeled, <prefix>_<tag>_prediction_precisions.csv */
inline void write_predictions(const model_def &m, const dataset &d,
                              const str &out_dir, const str &prefix,
                              const str &tag)
{
	vec<size_t> fidx;
	for (const str &f : m.features) {
		int c = d.col(f);
		if (c < 0)
			die("%s data lacks model feature column '%s'",
			    tag.c_str(), f.c_str());
		fidx.push_back((size_t)c);
	}
	bool labeled = true;
	vec<int> ridx;
	for (const str &r : m.outputs) {
		ridx.push_back(d.col(r));
		if (ridx.back() < 0)
			labeled = false;
	}
	vec<str> cols = m.features;
	for (size_t j = 0; j < m.outputs.size(); j++) {
		if (ridx[j] >= 0)
			cols.push_back(m.outputs[j]);
		cols.push_back(m.outputs[j] + "_prediction");
	}
	vec<vec<Q>> actual(m.outputs.size()), pred(m.outputs.size());
	vec<vec<str>> rows;
	for (const vec<Q> &r : d.rows) {
		hmap<str,Q> asgn;
		for (size_t j = 0; j < fidx.size(); j++)
			asgn[m.features[j]] = r[fidx[j]];
		hmap<str,Q> ys = eval_model(m, asgn);
		vec<str> row;
		for (size_t j = 0; j < fidx.size(); j++)
			row.push_back(dbl_str(q_dbl(r[fidx[j]])));
		for (size_t j = 0; j < m.outputs.size(); j++) {
			const Q &p = ys.at(m.outputs[j]);
			if (ridx[j] >= 0) {
				const Q &y = r[(size_t)ridx[j]];
				row.push_back(dbl_str(q_dbl(y)));
				actual[j].push_back(y);
				pred[j].push_back(p);
			}
			row.push_back(dbl_str(q_dbl(p)));
		}
		rows.push_back(move(row));
	}
	str base = out_dir + "/" + prefix + "_" + tag;
	write_csv(base + "_predictions_summary.csv", cols, rows);
	if (!labeled || d.rows.empty())
		return;
	vec<vec<str>> prec;
	for (size_t j = 0; j < m.outputs.size(); j++) {
		auto [msqe, r2] = precision_of(actual[j], pred[j]);
		prec.push_back({ m.outputs[j], dbl_str(q_dbl(msqe)),
		                 dbl_str(q_dbl(r2)) });
	}
	write_csv(base + "_prediction_precisions.csv",
	          { "response", "msqe", "r2_score" }, prec);
}

} // namespace detail

inline void cli_train_predict(const cli_args &a)
{
	using namespace detail;
	str out_dir = resolve_out_dir(a);
	str prefix = run_prefix(a);
	model_def m;
	opt<dataset> train;
	if (a.use_model) {
		m = load_saved_model(a);
	} else {
		if (a.data.empty())
			die("-mode %s requires -data (or -use_model t)",
			    a.mode.c_str());
		train = load_dataset(resolve_data_path(a.data));
		if (!a.resp)
			die("-mode %s requires -resp", a.mode.c_str());
		vec<str> feat;
		if (a.feat) {
			feat = *a.feat;
		} else {
			for (const str &c : train->cols) {
				bool is_resp = false;
				for (const str &r : *a.resp)
					is_resp |= c == r;
				if (!is_resp)
					feat.push_back(c);
			}
		}
		m = fit_data_model(a, *train, feat, *a.resp);
	}
	if (a.save_model)
		save_model(m, saved_model_path(a, out_dir));
	if (train)
		write_predictions(m, *train, out_dir, prefix, "training");
	if (a.mode == "predict") {
		if (a.new_data.empty())
			die("-mode predict requires -new_data");
		dataset nd = load_dataset(resolve_data_path(a.new_data));
		write_predictions(m, nd, out_dir, prefix, "new");
	}
}

/* ----------------------------------------------------------------------
 * doe
 * -------------------------------------------------------------------- */

inline void cli_doe(const cli_args &a)
{
	using namespace detail;
	if (a.doe_spec.empty())
		die("-mode doe requires -doe_spec");
	if (a.doe_algo.empty())
		die("-mode doe requires -doe_algo");
	str out_dir = resolve_out_dir(a);
	str prefix = run_prefix(a);
	doe_grid g = load_doe_grid(resolve_data_path(a.doe_spec));
	size_t n = a.doe_num_samples ? *a.doe_num_samples : 0;
	if (!n && a.doe_algo != "full_factorial")
		die("-doe_algo %s requires -doe_num_samples",
		    a.doe_algo.c_str());
	doe_design d = run_doe(g, a.doe_algo, n, a.seed);
	write_csv(out_dir + "/" + prefix + "_doe.csv", d.cols, d.rows);
}

/* ----------------------------------------------------------------------
 * model exploration modes
 * -------------------------------------------------------------------- */

inline void cli_explore(const cli_args &a)
{
	using namespace detail;
	if (a.spec.empty())
		die("-mode %s requires -spec", a.mode.c_str());
	str out_dir = resolve_out_dir(a);
	str prefix = run_prefix(a);
	problem_spec sp = load_spec(a.spec);
	apply_cli_overrides(sp, a);
	if (!a.new_data.empty())
		warn("-new_data is ignored in mode %s", a.mode.c_str());

	vec<str> resp = explore_responses(sp, a);
	opt<dataset> data;
	if (!a.data.empty())
		data = load_dataset(resolve_data_path(a.data));

	model_def m;
	if (a.use_model) {
		m = load_saved_model(a);
	} else if (a.model == "system") {
		opt<model_def> sm = system_model(sp, resp);
		if (!sm)
			die("-model system requires a 'system' section in "
			    "the spec");
		m = move(*sm);
	} else {
		if (!data)
			die("-model %s requires -data to train on",
			    a.model.empty() ? "dt" : a.model.c_str());
		m = fit_data_model(a, *data, explore_features(sp, a), resp);
	}
	if (a.save_model)
		save_model(m, saved_model_path(a, out_dir));

	solver_cfg scfg;
	explore_opts opts;
	if (a.epsilon)
		opts.epsilon = *a.epsilon;
	if (a.delta_rel) {
		opts.delta_rel = *a.delta_rel;
		if (sgn(*a.delta_rel) > 0)
			scfg.delta = *a.delta_rel;
	}
	opts.pareto = a.pareto;
	opts.with_assertions = a.mode == "optsyn";

	opt<model_def> sys = system_model(sp, resp);
	gear_instance gi = build_instance(move(sp), move(m), move(sys), scfg);

	auto report_path = [&](const str &tag) {
		return out_dir + "/" + prefix + "_" + tag + "_results.json";
	};
	auto put = [&](const str &path, const ojson &rep) {
		write_text(path, rep.dump(4) + "\n");
		note("wrote %s", path.c_str());
	};

	if (a.mode == "certify") {
		put(report_path("certify"),
		    run_certify(gi, gi.sp.queries, gi.sp.witnesses, opts));
	} else if (a.mode == "query") {
		put(report_path("query"),
		    run_query(gi, gi.sp.queries, opts));
	} else if (a.mode == "verify") {
		put(report_path("verify"),
		    run_verify(gi, gi.sp.assertions, gi.sp.configurations,
		               opts));
	} else if (a.mode == "synthesize") {
		put(report_path("synthesize"),
		    run_synthesize(gi, gi.sp.assertions, opts));
	} else { /* optimize, optsyn */
		if (!data)
			die("-mode %s requires -data (objective scaling "
			    "uses the data range)", a.mode.c_str());
		optimize_result r = run_optimize(gi, gi.sp.assertions,
			gi.sp.objectives, *data, opts);
		put(report_path("optimization"), r.report);
		write_csv(out_dir + "/" + prefix +
		          "_optimization_progress.csv",
		          r.progress_cols, r.progress_csv);
		write_text(out_dir + "/" + prefix +
		           "_optimization_progress.json",
		           r.progress_json.dump(4) + "\n");
	}
}

/* ----------------------------------------------------------------------
 * entry point
 * -------------------------------------------------------------------- */

inline int cli_main(int argc, char **argv)
{
	try {
		cli_args a = parse_cli(argc, argv);
		if (a.mode == "train" || a.mode == "predict")
			cli_train_predict(a);
		else if (a.mode == "doe")
			cli_doe(a);
		else if (a.mode == "certify" || a.mode == "query" ||
		         a.mode == "verify" || a.mode == "synthesize" ||
		         a.mode == "optimize" || a.mode == "optsyn")
			cli_explore(a);
		else if (a.mode == "subgroups")
			die("mode 'subgroups' is not supported");
		else
			die("unknown mode '%s' (train predict certify query "
			    "verify synthesize optimize optsyn doe)",
			    a.mode.c_str());
		return 0;
	} catch (const error &e) {
		fprintf(stderr, "smlp: error: %s\n", e.what());
		return 1;
	}
}

} // namespace smlp

#endif
