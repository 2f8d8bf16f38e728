/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#include "gen.hh"

#include <smlp/infix.hh>
#include <smlp/solver.hh>

#include <catch2/catch_amalgamated.hpp>

using namespace smlp;

namespace {

solver_cfg dflt;

fptr fml(const char *s)
{
	return formula_of(parse_expr(s));
}

std::map<str,Q> to_map(const hmap<str,Q> &m)
{
	return std::map<str,Q>(m.begin(), m.end());
}

str witness_str(const sat_result &r)
{
	str s;
	for (const auto &[k, v] : to_map(r.witness))
		s += k + "=" + q_str(v) + ";";
	return s;
}

} // namespace

TEST_CASE("simple satisfiable and unsatisfiable constraints")
{
	vec<svar> x01 = { { "x", ival(Q(0), Q(1)), false } };
	vec<svar> x02 = { { "x", ival(Q(0), Q(2)), false } };

	sat_result r = check_sat(x02, fml("x*x == 2"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	REQUIRE(r.witness.count("x"));
	const Q &w = r.witness.at("x");
	CHECK(q_abs(w * w - 2) <= dflt.delta);
	CHECK(Q(0) <= w);
	CHECK(w <= Q(2));

	CHECK(check_sat(x01, fml("x<=0 and x>1"), dflt).status ==
	      sat_status::UNSAT);
	CHECK(check_sat(x01, fml("x < 0"), dflt).status == sat_status::UNSAT);
	r = check_sat(x01, fml("x <= 0"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	CHECK(r.witness.at("x") == 0);

	/* unsat stays exact: no delta is applied on the refutation side */
	vec<svar> thin = { { "x", ival(dflt.delta / 2, Q(1)), false } };
	CHECK(check_sat(thin, fml("x <= 0"), dflt).status ==
	      sat_status::UNSAT);
}

TEST_CASE("equalities, disequalities and disjunctions")
{
	vec<svar> x01 = { { "x", ival(Q(0), Q(1)), false } };
	vec<svar> xi = { { "x", ival(Q(0), Q(1)), true } };

	/* a disjunction of grid points conflicting with an equality */
	CHECK(check_sat(x01, fml("(x==0 or x==1) and x==0.5"), dflt).status ==
	      sat_status::UNSAT);
	sat_result r = check_sat(x01, fml("(x==0 or x==1) and x>=0.5"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	CHECK(r.witness.at("x") == 1);

	/* integrality cuts off the only real solution */
	CHECK(check_sat(xi, fml("x == 0.5"), dflt).status ==
	      sat_status::UNSAT);
	r = check_sat(xi, fml("x >= 0.5"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	CHECK(r.witness.at("x") == 1);

	/* disequality refutation and satisfaction */
	vec<svar> x00 = { { "x", ival(Q(0), Q(0)), false } };
	CHECK(check_sat(x00, fml("x != 0"), dflt).status == sat_status::UNSAT);
	r = check_sat(x01, fml("x != 0"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	CHECK(sgn(r.witness.at("x")) != 0);

	/* a term that is nowhere defined cannot witness satisfaction */
	CHECK(check_sat(x00, fml("1/x <= 1"), dflt).status ==
	      sat_status::UNSAT);
}

TEST_CASE("interval contraction at work")
{
	vec<svar> sq = { { "x", ival(Q(0), Q(2)), false },
	                 { "y", ival(Q(0), Q(2)), false } };
	/* nonnegative product cannot be -1 */
	CHECK(check_sat(sq, fml("x*y <= -1"), dflt).status ==
	      sat_status::UNSAT);

	vec<svar> xy = { { "x", ival(Q(-4), Q(4)), false },
	                 { "y", ival(Q(1), Q(4)), false } };
	sat_result r = check_sat(xy, fml("x/y == 2"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	std::map<str,Q> w = to_map(r.witness);
	CHECK(q_abs(w["x"] / w["y"] - 2) <= dflt.delta);

	/* certainly-true atoms retire without a witness search */
	vec<svar> any = { { "x", ival(Q(-1), Q(1)), false } };
	r = check_sat(any, fml("x*0 == 0"), dflt);
	REQUIRE(r.status == sat_status::SAT);
	CHECK(r.witness.at("x") == 0);
}

TEST_CASE("trivial formulas and empty integer domains")
{
	vec<svar> x01 = { { "x", ival(Q(0), Q(1)), false } };
	sat_result r = check_sat(x01, f_true(), dflt);
	REQUIRE(r.status == sat_status::SAT);
	CHECK(r.witness.at("x") == Q(1, 2));
	CHECK(check_sat(x01, f_false(), dflt).status == sat_status::UNSAT);

	vec<svar> hole = { { "x", ival(Q(1, 4), Q(3, 4)), true } };
	CHECK(check_sat(hole, f_true(), dflt).status == sat_status::UNSAT);
	CHECK(check_sat(hole, fml("x >= 0"), dflt).status ==
	      sat_status::UNSAT);
}

TEST_CASE("resource limits give honest unknowns")
{
	vec<svar> xy = { { "x", ival(Q(-2), Q(2)), false },
	                 { "y", ival(Q(-2), Q(2)), false } };
	solver_cfg tiny = dflt;
	tiny.max_splits = 2;
	sat_result r = check_sat(xy, fml("x*x + y*y == 1"), tiny);
	CHECK(r.status == sat_status::UNKNOWN);
	CHECK(r.reason.find("budget") != str::npos);

	vec<svar> x02 = { { "x", ival(Q(0), Q(2)), false } };
	solver_cfg coarse = dflt;
	coarse.min_width = Q(1, 4);
	r = check_sat(x02, fml("x*x == 2"), coarse);
	CHECK(r.status == sat_status::UNKNOWN);
	CHECK(r.reason.find("resolution") != str::npos);
}

TEST_CASE("validity checking")
{
	vec<svar> x = { { "x", ival(Q(-5), Q(5)), false } };
	CHECK(check_valid(x, fml("x*x >= 0"), dflt).status ==
	      vld_status::VALID);
	vld_result v = check_valid(x, fml("x >= 1"), dflt);
	REQUIRE(v.status == vld_status::COUNTEREXAMPLE);
	CHECK(v.counterexample.at("x") < 1 + dflt.delta);
	CHECK(q_abs(v.counterexample.at("x")) <= 5);
	/* the counterexample of a conjunction violates some conjunct */
	v = check_valid(x, fml("x <= 4 and x*x <= 16"), dflt);
	REQUIRE(v.status == vld_status::COUNTEREXAMPLE);
	const Q &c = v.counterexample.at("x");
	CHECK((c > 4 - dflt.delta || c * c > 16 - dflt.delta));
}

TEST_CASE("unknown variables in constraints are reported")
{
	vec<svar> x = { { "x", ival(Q(0), Q(1)), false } };
	CHECK_THROWS_AS(check_sat(x, fml("y <= 0"), dflt), error);
	CHECK_THROWS_AS(check_sat(x, fml("x**x <= 2"), dflt), error);
}

TEST_CASE("witness quality and unsat exactness", "[prop]")
{
	gen::mt g(31);
	solver_cfg cfg = dflt;
	cfg.max_splits = 3000; /* keep adversarial cases quick */
	int sat_n = 0, unsat_n = 0;
	for (int it = 0; it < 1000; it++) {
		vec<svar> vars = gen::rnd_box(g, 1 + gen::rint(g, 0, 2));
		vec<str> names;
		for (const svar &v : vars)
			names.push_back(v.name);
		fptr f = gen::rnd_ineq_form(g, names, 2);
		bool with_eq = gen::coin(g, 0.25);
		if (with_eq) {
			/* sprinkle in an equality to exercise that path */
			std::map<str,Q> pt = gen::rnd_point(g, vars);
			f = f_all({ f, f_atom(acmp::EQ,
				mk2(eop::SUB, mk_var(names[0]),
				    mk_cnst(pt[names[0]]))) });
		}
		sat_result r = check_sat(vars, f, cfg);
		if (r.status == sat_status::SAT) {
			sat_n++;
			std::map<str,Q> w = to_map(r.witness);
			CHECK(oracle::witness_in_box(vars, w));
			CHECK(oracle::witness_ok(f, w, cfg.delta));
		} else if (r.status == sat_status::UNSAT && !with_eq) {
			unsat_n++;
			/* no margin-robust grid point may exist */
			oracle::grid_hit hit =
				oracle::grid_search(vars, f, 13, 1e-6);
			INFO("iteration " << it);
			CHECK(!hit.found);
		}
		/* spot-check determinism on a sample */
		if (it % 97 == 0) {
			sat_result r2 = check_sat(vars, f, cfg);
			CHECK(r2.status == r.status);
			CHECK(witness_str(r2) == witness_str(r));
		}
	}
	/* the generator must exercise both outcomes substantially */
	CHECK(sat_n > 200);
	CHECK(unsat_n > 50);
}

TEST_CASE("integer witnesses stay on the lattice", "[prop]")
{
	gen::mt g(32);
	solver_cfg cfg = dflt;
	cfg.max_splits = 3000;
	int sat_n = 0;
	for (int it = 0; it < 300; it++) {
		vec<svar> vars = gen::rnd_box(g, 2);
		for (svar &v : vars)
			v.integral = true;
		vec<str> names = { vars[0].name, vars[1].name };
		fptr f = gen::rnd_ineq_form(g, names, 2);
		sat_result r = check_sat(vars, f, cfg);
		if (r.status != sat_status::SAT)
			continue;
		sat_n++;
		std::map<str,Q> w = to_map(r.witness);
		CHECK(oracle::witness_in_box(vars, w));
		for (const auto &[n, q] : w)
			CHECK(q.get_den() == 1);
		CHECK(oracle::witness_ok(f, w, cfg.delta));
	}
	CHECK(sat_n > 50);
}
