/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#include <catch2/catch_amalgamated.hpp>

#include <smlp/cli.hh>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace smlp;

namespace {

str data_file(const char *name)
{
	const char *d = getenv("SMLP_TEST_DATA");
	REQUIRE(d);
	return str(d) + "/" + name;
}

struct tmpdir {

	std::filesystem::path p;

	tmpdir()
	{
		str t = (std::filesystem::temp_directory_path() /
		         "smlp-cli-XXXXXX").string();
		REQUIRE(mkdtemp(t.data()));
		p = t;
	}

	~tmpdir() { std::filesystem::remove_all(p); }

	str file(const char *name) const { return (p / name).string(); }
};

str slurp(const str &path)
{
	std::ifstream in(path, std::ios::binary);
	REQUIRE(in);
	return str(std::istreambuf_iterator<char>(in),
	           std::istreambuf_iterator<char>());
}

/* argv plumbing for parse_cli / cli_main */
struct argvec {

	vec<str> store;
	vec<char *> ptrs;

	argvec(vec<str> args)
	{
		store.push_back("smlp");
		for (str &s : args)
			store.push_back(move(s));
		for (str &s : store)
			ptrs.push_back(s.data());
	}

	int argc() const { return (int)ptrs.size(); }
	char **argv() { return ptrs.data(); }
};

cli_args parse(vec<str> args)
{
	argvec a(move(args));
	return parse_cli(a.argc(), a.argv());
}

int run(vec<str> args)
{
	argvec a(move(args));
	return cli_main(a.argc(), a.argv());
}

const jval &key(const jval &j, const char *k)
{
	return j.at(k, "report");
}

} // namespace

TEST_CASE("flags parse into typed arguments", "[cli]")
{
	cli_args a = parse({ "-mode", "optimize", "-data", "d.csv",
	                     "-spec", "s.spec", "-resp", "y1, y2",
	                     "-feat", " x1 ,x2,", "-model", "dt_sklearn",
	                     "-pareto", "t", "-epsilon", "1/20",
	                     "-delta_rel", "0.001", "-seed", "42",
	                     "-pref", "run1", "-out_dir", "o",
	                     "-alpha", "x1>0", "-beta", "y1<=0",
	                     "-eta", "p1>0",
	                     "-dt_sklearn_max_depth", "7",
	                     "-poly_sklearn_degree", "3",
	                     "-doe_num_samples", "12",
	                     "-save_model", "t", "-use_model", "f",
	                     "-model_name", "m1",
	                     "-model_per_response", "true",
	                     "-asrt_names", "a1", "-asrt_exprs", "y1<=0",
	                     "-quer_names", "q1", "-quer_exprs", "y1<=1",
	                     "-objv_names", "o1", "-objv_exprs", "y1",
	                     "-doe_spec", "g.csv", "-doe_algo",
	                     "full_factorial", "-new_data", "n.csv" });
	CHECK(a.mode == "optimize");
	CHECK(a.data == "d.csv");
	CHECK(a.new_data == "n.csv");
	CHECK(a.spec == "s.spec");
	REQUIRE(a.resp);
	CHECK(*a.resp == vec<str>{ "y1", "y2" });
	REQUIRE(a.feat);
	CHECK(*a.feat == vec<str>{ "x1", "x2" });
	CHECK(a.model == "dt");
	CHECK(a.pareto);
	REQUIRE(a.epsilon);
	CHECK(*a.epsilon == Q(1, 20));
	REQUIRE(a.delta_rel);
	CHECK(*a.delta_rel == Q(1, 1000));
	CHECK(a.seed == 42);
	CHECK(a.pref == "run1");
	CHECK(a.out_dir == "o");
	CHECK(a.alpha == "x1>0");
	CHECK(a.beta == "y1<=0");
	CHECK(a.eta == "p1>0");
	CHECK(a.max_depth == 7);
	CHECK(a.poly_degree == 3);
	REQUIRE(a.doe_num_samples);
	CHECK(*a.doe_num_samples == 12);
	CHECK(a.save_model);
	CHECK(!a.use_model);
	CHECK(a.model_name == "m1");
	CHECK(a.model_per_response);
	CHECK(a.asrt_names == "a1");
	CHECK(a.asrt_exprs == "y1<=0");
	CHECK(a.quer_exprs == "y1<=1");
	CHECK(a.objv_exprs == "y1");
	CHECK(a.doe_spec == "g.csv");
	CHECK(a.doe_algo == "full_factorial");

	CHECK(parse({ "-mode", "train", "-model", "poly_sklearn" }).model
	      == "poly");
	CHECK(parse({ "-mode", "train", "-model", "system" }).model
	      == "system");
	CHECK(*parse({ "-mode", "x", "-epsilon", "0.05" }).epsilon
	      == Q(1, 20));

	CHECK_THROWS_AS(parse({ "-mode", "train", "-model", "rf" }), error);
	CHECK_THROWS_AS(parse({ "-mode", "t", "-pareto", "x" }), error);
	CHECK_THROWS_AS(parse({ "-mode", "t", "-seed", "12x" }), error);
	CHECK_THROWS_AS(parse({ "-mode", "t", "-epsilon", "abc" }), error);
	CHECK_THROWS_AS(parse({ "-mode", "t", "-data" }), error);
	CHECK_THROWS_AS(parse({ "-data", "d.csv" }), error);
	CHECK_THROWS_AS(parse({ "-mode", "train", "stray" }), error);
}

TEST_CASE("unsupported options are skipped with their value", "[cli]")
{
	/* unknown flag followed by a value: both consumed */
	cli_args a = parse({ "-mode", "query", "-plots", "t",
	                     "-spec", "s.spec" });
	CHECK(a.mode == "query");
	CHECK(a.spec == "s.spec");

	/* unknown flag directly followed by a known flag: only itself */
	cli_args b = parse({ "-mode", "query", "-interactive",
	                     "-spec", "s.spec" });
	CHECK(b.spec == "s.spec");

	/* negative numbers do not look like flags */
	cli_args c = parse({ "-mode", "query", "-weird", "-5",
	                     "-spec", "s.spec" });
	CHECK(c.spec == "s.spec");
}

TEST_CASE("output locations follow the input files", "[cli]")
{
	tmpdir tmp;
	cli_args a;
	a.out_dir = tmp.file("made/by/cli");
	CHECK(resolve_out_dir(a) == a.out_dir);
	CHECK(std::filesystem::is_directory(a.out_dir));

	/* -out_dir wins over everything else */
	a.data = "elsewhere/d.csv";
	CHECK(resolve_out_dir(a) == a.out_dir);

	cli_args b;
	b.data = "some/dir/d.csv";
	CHECK(resolve_out_dir(b) == "some/dir");
	b.data = "d.csv";
	CHECK(resolve_out_dir(b) == ".");

	cli_args c;
	c.new_data = "nd/n.csv";
	CHECK(resolve_out_dir(c) == "nd");
	cli_args d;
	d.doe_spec = "doe/g.csv";
	CHECK(resolve_out_dir(d) == "doe");
	cli_args e;
	e.spec = "sp/s.spec";
	CHECK(resolve_out_dir(e) == "sp");
	CHECK_THROWS_AS(resolve_out_dir(cli_args{}), error);

	/* prefixes derive from the first input file's stem */
	cli_args p;
	p.data = "a/b/pxy_data.csv.gz";
	CHECK(run_prefix(p) == "pxy_data");
	p.pref = "run7";
	CHECK(run_prefix(p) == "run7_pxy_data");

	cli_args pn;
	pn.new_data = "x/n.csv";
	CHECK(run_prefix(pn) == "n");
	cli_args pm;
	pm.use_model = true;
	pm.model_name = "m_model.json";
	CHECK(run_prefix(pm) == "m_model");
	cli_args pd;
	pd.doe_spec = "g/grid.csv";
	pd.model_name = "ignored"; /* only honoured with -use_model t */
	CHECK(run_prefix(pd) == "grid");
	cli_args ps;
	ps.spec = "s/prob.spec";
	CHECK(run_prefix(ps) == "prob");
	CHECK_THROWS_AS(run_prefix(cli_args{}), error);
}

TEST_CASE("named expression lists pair names with expressions", "[cli]")
{
	using detail::named_raw;
	vec<pair<str,str>> r = named_raw("", "y>=0; y<=1", "asrt");
	REQUIRE(r.size() == 2);
	CHECK(r[0].first == "asrt1");
	CHECK(r[0].second == "y>=0");
	CHECK(r[1].first == "asrt2");
	CHECK(r[1].second == "y<=1");

	vec<pair<str,str>> n = named_raw("good, tight", "y>=0;y<=1", "asrt");
	CHECK(n[0].first == "good");
	CHECK(n[1].first == "tight");

	CHECK(named_raw("", "", "quer").empty());
	CHECK_THROWS_AS(named_raw("a,b", "y>=0", "asrt"), error);
	CHECK_THROWS_AS(named_raw("a", "", "asrt"), error);
}

TEST_CASE("cli overrides replace spec constraint slots", "[cli]")
{
	problem_spec sp = load_spec(data_file("pxy_query.spec"));
	REQUIRE(sp.queries.size() == 1);

	cli_args a;
	a.alpha = "x<=0 and p<=0";
	a.beta = "y>0";
	a.eta = "p>0";
	apply_cli_overrides(sp, a);
	CHECK(sp.alpha);
	CHECK(sp.beta);
	CHECK(sp.eta);

	cli_args lists;
	lists.asrt_names = "good, tight";
	lists.asrt_exprs = "y>=0; y<=1";
	lists.quer_exprs = "y<=0; y<=1";
	lists.objv_exprs = "y+1";
	apply_cli_overrides(sp, lists);
	REQUIRE(sp.assertions.size() == 2);
	CHECK(sp.assertions[0].first == "good");
	CHECK(sp.assertions[1].first == "tight");
	REQUIRE(sp.queries.size() == 2);
	CHECK(sp.queries[0].first == "quer1");
	CHECK(sp.queries[1].first == "quer2");
	REQUIRE(sp.objectives.size() == 1);
	CHECK(sp.objectives[0].first == "objv1");

	/* constraint slots restrict which variables may appear */
	problem_spec fresh = load_spec(data_file("pxy_query.spec"));
	cli_args bad_alpha;
	bad_alpha.alpha = "y>0"; /* outputs are not allowed in alpha */
	CHECK_THROWS_AS(apply_cli_overrides(fresh, bad_alpha), error);
	cli_args bad_eta;
	bad_eta.eta = "x>0"; /* inputs are not allowed in eta */
	CHECK_THROWS_AS(apply_cli_overrides(fresh, bad_eta), error);
	cli_args bad_objv;
	bad_objv.objv_exprs = "y>=1"; /* objectives must be numeric */
	CHECK_THROWS_AS(apply_cli_overrides(fresh, bad_objv), error);
	cli_args bad_asrt;
	bad_asrt.asrt_exprs = "y+1"; /* assertions must be boolean */
	CHECK_THROWS_AS(apply_cli_overrides(fresh, bad_asrt), error);
	cli_args orphan;
	orphan.asrt_names = "a1"; /* names without expressions */
	CHECK_THROWS_AS(apply_cli_overrides(fresh, orphan), error);
}

TEST_CASE("exploration modes run end to end", "[cli]")
{
	tmpdir tmp;
	str out = tmp.file("out");

	/* query: PASS, and any stable knob sits at p <= -3/10 */
	REQUIRE(run({ "-mode", "query", "-spec", data_file("pxy_query.spec"),
	              "-model", "system", "-out_dir", out,
	              "-pref", "t1" }) == 0);
	jval q = load_json_file(out + "/t1_pxy_query_query_results.json");
	CHECK(key(key(q, "q1"), "query_status").as_str("q") == "PASS");
	CHECK(key(key(key(q, "q1"), "query_result"), "p").as_num("p")
	      <= Q(-3, 10));
	CHECK(key(q, "smlp_execution").as_str("q") == "completed");

	/* certify: one report, four verdicts */
	REQUIRE(run({ "-mode", "certify", "-spec", data_file("pxy_cert4.spec"),
	              "-model", "system", "-out_dir", out,
	              "-pref", "t2" }) == 0);
	jval c = load_json_file(out + "/t2_pxy_cert4_certify_results.json");
	CHECK(key(key(c, "query_stable_witness"), "witness_status")
	      .as_str("c") == "PASS");
	CHECK(key(key(c, "query_grid_conflict"), "witness_status")
	      .as_str("c") == "ERROR");
	CHECK(key(key(c, "query_unstable_witness"), "witness_status")
	      .as_str("c") == "FAIL");
	CHECK(key(key(c, "query_infeasible_witness"), "witness_status")
	      .as_str("c") == "FAIL");

	/* verify: per-assertion verdicts against named configurations */
	REQUIRE(run({ "-mode", "verify", "-spec", data_file("pxy_verify.spec"),
	              "-model", "system", "-out_dir", out,
	              "-pref", "t3" }) == 0);
	jval v = load_json_file(out + "/t3_pxy_verify_verify_results.json");
	CHECK(key(key(v, "a_neg"), "assertion_status").as_str("v") == "PASS");
	CHECK(key(key(v, "a_zero"), "assertion_status").as_str("v") == "FAIL");

	/* synthesize: FAIL on the spec's beta, PASS once -beta relaxes it */
	REQUIRE(run({ "-mode", "synthesize",
	              "-spec", data_file("pxy_synth_fail.spec"),
	              "-model", "system", "-out_dir", out,
	              "-pref", "t4" }) == 0);
	jval s = load_json_file(out +
	                        "/t4_pxy_synth_fail_synthesize_results.json");
	CHECK(key(s, "synthesis_status").as_str("s") == "FAIL");
	CHECK(key(s, "synthesis_result").is_null());

	REQUIRE(run({ "-mode", "synthesize",
	              "-spec", data_file("pxy_synth_fail.spec"),
	              "-model", "system", "-beta", "y<=1", "-out_dir", out,
	              "-pref", "t5" }) == 0);
	jval s2 = load_json_file(out +
	                         "/t5_pxy_synth_fail_synthesize_results.json");
	CHECK(key(s2, "synthesis_status").as_str("s") == "PASS");

	/* reruns are byte-identical */
	str out2 = tmp.file("out2");
	REQUIRE(run({ "-mode", "query", "-spec", data_file("pxy_query.spec"),
	              "-model", "system", "-out_dir", out2,
	              "-pref", "t1" }) == 0);
	CHECK(slurp(out + "/t1_pxy_query_query_results.json") ==
	      slurp(out2 + "/t1_pxy_query_query_results.json"));
}

TEST_CASE("optimization writes reports and progress files", "[cli]")
{
	tmpdir tmp;
	str out = tmp.file("o1"), out2 = tmp.file("o2");
	vec<str> args = { "-mode", "optimize",
	                  "-spec", data_file("pxy_opt.spec"),
	                  "-data", data_file("pxy_data.csv"),
	                  "-model", "system", "-epsilon", "0.01",
	                  "-pref", "t6" };
	vec<str> a1 = args;
	a1.push_back("-out_dir");
	a1.push_back(out);
	REQUIRE(run(a1) == 0);

	str base = out + "/t6_pxy_data";
	jval r = load_json_file(base + "_optimization_results.json");
	const jval &obj = key(r, "objv1");
	/* the exact max-min optimum of the system is 0 */
	const Q &lo = key(obj, "threshold").as_num("lo");
	CHECK(lo <= Q(0));
	CHECK(lo >= Q(-1, 20));
	CHECK(key(obj, "max_in_data").as_num("o") == Q(1));
	CHECK(key(obj, "min_in_data").as_num("o") == Q(-1));
	CHECK(key(key(r, "threshold_lo"), "value_in_config").as_num("r") == lo);
	CHECK(key(key(r, "max_in_data"), "value_in_config").as_num("r")
	      == Q(1));
	CHECK(key(key(r, "min_in_data"), "value_in_config").as_num("r")
	      == Q(0));
	CHECK(key(r, "synthesis_feasible").as_str("r") == "true");

	/* progress files exist and agree on the number of iterations */
	raw_csv prog = load_raw_csv(base + "_optimization_progress.csv");
	CHECK(prog.cols[0] == "iteration");
	jval pj = load_json_file(base + "_optimization_progress.json");
	CHECK(pj.arr.size() == prog.rows.size());

	/* byte-identical rerun */
	vec<str> a2 = args;
	a2.push_back("-out_dir");
	a2.push_back(out2);
	REQUIRE(run(a2) == 0);
	for (const char *suf : { "_optimization_results.json",
	                         "_optimization_progress.csv",
	                         "_optimization_progress.json" })
		CHECK(slurp(out + "/t6_pxy_data" + suf) ==
		      slurp(out2 + "/t6_pxy_data" + suf));

	/* optsyn runs the same pipeline with assertions enabled */
	REQUIRE(run({ "-mode", "optsyn", "-spec", data_file("pxy_opt.spec"),
	              "-data", data_file("pxy_data.csv"),
	              "-model", "system", "-epsilon", "0.01",
	              "-pref", "t7", "-out_dir", out }) == 0);
	CHECK(std::filesystem::exists(out +
	      "/t7_pxy_data_optimization_results.json"));
}

TEST_CASE("training and prediction write summaries", "[cli]")
{
	tmpdir tmp;
	str out = tmp.file("out");

	REQUIRE(run({ "-mode", "train", "-data",
	              data_file("smlp_toy_basic.csv"),
	              "-resp", "y1,y2", "-feat", "x1,x2,p1,p2",
	              "-model", "dt", "-save_model", "t",
	              "-model_name", "m0", "-out_dir", out,
	              "-pref", "t7" }) == 0);
	str base = out + "/t7_smlp_toy_basic";
	raw_csv summ = load_raw_csv(base + "_training_predictions_summary.csv");
	CHECK(summ.cols == vec<str>{ "x1", "x2", "p1", "p2",
	                             "y1", "y1_prediction",
	                             "y2", "y2_prediction" });
	CHECK(summ.rows.size() == 10);
	raw_csv prec = load_raw_csv(base + "_prediction_precisions.csv");
	CHECK(prec.cols == vec<str>{ "response", "msqe", "r2_score" });
	REQUIRE(prec.rows.size() == 2);
	CHECK(prec.rows[0][0] == "y1");
	CHECK(prec.rows[1][0] == "y2");
	str model_path = out + "/t7_m0_model.json";
	REQUIRE(std::filesystem::exists(model_path));

	/* predict from the saved model on unlabeled data: summary only */
	REQUIRE(run({ "-mode", "predict", "-use_model", "t",
	              "-model_name", model_path,
	              "-new_data",
	              data_file("smlp_toy_basic_pred_unlabeled.csv"),
	              "-out_dir", out, "-pref", "t8" }) == 0);
	str nb = out + "/t8_smlp_toy_basic_pred_unlabeled";
	raw_csv np = load_raw_csv(nb + "_new_predictions_summary.csv");
	CHECK(np.cols == vec<str>{ "x1", "x2", "p1", "p2",
	                           "y1_prediction", "y2_prediction" });
	CHECK(np.rows.size() == 4);
	CHECK(!std::filesystem::exists(nb + "_new_prediction_precisions.csv"));

	/* labeled new data adds the precision table */
	REQUIRE(run({ "-mode", "predict", "-use_model", "t",
	              "-model_name", model_path,
	              "-new_data", data_file("smlp_toy_basic.csv"),
	              "-out_dir", out, "-pref", "t9" }) == 0);
	str lb = out + "/t9_smlp_toy_basic";
	CHECK(std::filesystem::exists(lb + "_new_predictions_summary.csv"));
	CHECK(std::filesystem::exists(lb + "_new_prediction_precisions.csv"));

	/* a tree fit on the data predicts the training points exactly, so
	 * the precision table reports zero error */
	CHECK(prec.rows[0][1] == "0.0");
	CHECK(prec.rows[0][2] == "1.0");
}

TEST_CASE("doe designs are written deterministically", "[cli]")
{
	tmpdir tmp;
	str out = tmp.file("out"), out2 = tmp.file("out2");

	REQUIRE(run({ "-mode", "doe",
	              "-doe_spec", data_file("doe_four_levels_real.csv"),
	              "-doe_algo", "full_factorial",
	              "-out_dir", out, "-pref", "d1" }) == 0);
	str path = out + "/d1_doe_four_levels_real_doe.csv";
	raw_csv ff = load_raw_csv(path);
	CHECK(ff.cols == vec<str>{ "a", "b", "c" });
	CHECK(ff.rows.size() == 48);

	REQUIRE(run({ "-mode", "doe",
	              "-doe_spec", data_file("doe_four_levels_real.csv"),
	              "-doe_algo", "full_factorial",
	              "-out_dir", out2, "-pref", "d1" }) == 0);
	CHECK(slurp(path) ==
	      slurp(out2 + "/d1_doe_four_levels_real_doe.csv"));

	/* sampling algorithms need a sample count and honour the seed */
	CHECK(run({ "-mode", "doe",
	            "-doe_spec", data_file("doe_four_levels_real.csv"),
	            "-doe_algo", "latin_hypercube",
	            "-out_dir", out }) == 1);
	REQUIRE(run({ "-mode", "doe",
	              "-doe_spec", data_file("doe_four_levels_real.csv"),
	              "-doe_algo", "uniform_random",
	              "-doe_num_samples", "5", "-seed", "9",
	              "-out_dir", out, "-pref", "d2" }) == 0);
	str rpath = out + "/d2_doe_four_levels_real_doe.csv";
	CHECK(load_raw_csv(rpath).rows.size() == 5);
	REQUIRE(run({ "-mode", "doe",
	              "-doe_spec", data_file("doe_four_levels_real.csv"),
	              "-doe_algo", "uniform_random",
	              "-doe_num_samples", "5", "-seed", "9",
	              "-out_dir", out2, "-pref", "d2" }) == 0);
	CHECK(slurp(rpath) == slurp(out2 + "/d2_doe_four_levels_real_doe.csv"));
	REQUIRE(run({ "-mode", "doe",
	              "-doe_spec", data_file("doe_four_levels_real.csv"),
	              "-doe_algo", "uniform_random",
	              "-doe_num_samples", "5", "-seed", "10",
	              "-out_dir", out, "-pref", "d3" }) == 0);
	CHECK(slurp(rpath) !=
	      slurp(out + "/d3_doe_four_levels_real_doe.csv"));
}

TEST_CASE("errors surface as nonzero exit codes", "[cli]")
{
	tmpdir tmp;
	str out = tmp.file("out");
	CHECK(run({ "-mode", "verify" }) == 1);
	CHECK(run({ "-mode", "subgroups" }) == 1);
	CHECK(run({ "-mode", "frobnicate" }) == 1);
	CHECK(run({}) == 1);
	CHECK(run({ "-mode", "optimize",
	            "-spec", data_file("pxy_opt.spec"),
	            "-model", "system", "-out_dir", out }) == 1);
	CHECK(run({ "-mode", "train", "-data",
	            data_file("smlp_toy_basic.csv"),
	            "-out_dir", out }) == 1);
	CHECK(run({ "-mode", "predict", "-use_model", "t",
	            "-model_name", "no_such_model",
	            "-new_data", data_file("smlp_toy_basic.csv"),
	            "-out_dir", out }) == 1);
	CHECK(run({ "-mode", "doe",
	            "-doe_spec", data_file("doe_four_levels_real.csv"),
	            "-out_dir", out }) == 1);
	CHECK(run({ "-mode", "query", "-spec", "missing.spec",
	            "-model", "system", "-out_dir", out }) == 1);
}
