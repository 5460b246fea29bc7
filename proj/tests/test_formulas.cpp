#include <gtest/gtest.h>

#include "anmult/anmult.hpp"
#include "anmult/io/json.hpp"
#include "oracles/kostka.hpp"
#include "oracles/random.hpp"

using namespace anmult;

namespace {

const OrbitLabel example_top{3, 2, 1, 1, 1, 1};

MultiplicityTable example_table() {
  MultiplicityTable t = MultiplicityTable::for_top(example_top);
  t.set(OrbitLabel{2, 2, 2, 1, 1, 1}, 2);
  t.set(OrbitLabel{3, 1, 1, 1, 1, 1, 1}, 5);
  t.set(OrbitLabel{2, 2, 1, 1, 1, 1, 1}, 10);
  t.set(OrbitLabel{2, 1, 1, 1, 1, 1, 1, 1}, 35);
  t.set(OrbitLabel::ones(9), 105);
  return t;
}

// Kostka numbers, computed without any of the library's recursion
MultiplicityTable kostka_table(const OrbitLabel& top) {
  MultiplicityTable t = MultiplicityTable::for_top(top);
  for (const auto& q : sub_dominants(top)) t.set(q, oracle::kostka(top.parts(), q.parts()));
  return t;
}

const Calibration& shared_calibration() {
  static const Calibration cal = calibrate_builtin();
  return cal;
}

ThetaData theta_at(const OrbitLabel& top, int n) { return ThetaData::of(top, n, 7); }

}  // namespace

TEST(FormulaSpecs, TwelveIdsInListedOrder) {
  std::vector<std::string> ids;
  for (const auto& s : builtin_formulas()) ids.push_back(s.id.compact());
  EXPECT_EQ(ids, (std::vector<std::string>{"7", "52", "43", "322", "6", "42", "33", "222", "5", "32", "4", "22"}));
  for (const auto& s : builtin_formulas()) {
    EXPECT_FALSE(s.id.contains_one());
    for (const auto& t : s.theta_terms) {
      EXPECT_LE(t.thetas.weight(), s.id.weight());
      EXPECT_EQ(t.thetas.weight() % 2, s.id.weight() % 2);
      EXPECT_FALSE(t.thetas.contains_one());
    }
  }
}

TEST(FormulaSpecs, DegreeSevenCoefficients) {
  const auto& s = builtin_formula(Partition{7});
  ASSERT_EQ(s.theta_terms.size(), 4u);
  const std::vector<long> coefficients{-720, 5040, 5040, -10080};
  const std::vector<Partition> monomials{Partition{7}, Partition{5, 2}, Partition{4, 3}, Partition{3, 2, 2}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(s.theta_terms[i].coefficient, coefficients[i]);
    EXPECT_EQ(s.theta_terms[i].thetas, monomials[i]);
  }
}

TEST(FormulaSpecs, DegreeFourShape) {
  const auto& s = builtin_formula(Partition{4});
  EXPECT_EQ(s.cof_factor.constant, -120);
  EXPECT_EQ(s.cof_factor.poly, PolyN{1});
  EXPECT_EQ(s.cof_factor.symbol, GSymbol::g4);
  ASSERT_EQ(s.dim_terms.size(), 1u);
  EXPECT_EQ(s.dim_terms[0].poly, PolyN::linear(1));
  EXPECT_EQ(s.dim_terms[0].symbol, GSymbol::g4);
  ASSERT_EQ(s.theta_terms.size(), 2u);
  EXPECT_EQ(s.theta_terms[0].coefficient, 720);
  EXPECT_EQ(s.theta_terms[0].thetas, Partition{4});
  EXPECT_EQ(s.theta_terms[1].coefficient, -720);
  EXPECT_EQ(s.theta_terms[1].thetas, (Partition{2, 2}));
}

TEST(FormulaSpecs, SymbolInsideThetaTerm) {
  const auto& s = builtin_formula(Partition{4, 2});
  const auto& last = s.theta_terms.back();
  EXPECT_EQ(last.thetas, Partition{2});
  EXPECT_EQ(last.symbol, GSymbol::g6);
  EXPECT_EQ(last.f, PolyN::linear(1) * PolyN::linear(1));
}

TEST(FormulaSpecs, UnknownIdRejected) { EXPECT_THROW(builtin_formula(Partition{8}), DomainError); }

TEST(Calibration, SharedFactorsReconstructed) {
  const auto& cal = shared_calibration();
  EXPECT_EQ(cal.symbols.size(), 5u);
  EXPECT_EQ(cal.symbols.at(GSymbol::g), RatFuncN(PolyN::shifted_product(-5, 7)));
  EXPECT_EQ(cal.symbols.at(GSymbol::g6), RatFuncN(PolyN::shifted_product(-4, 6)));
  EXPECT_EQ(cal.symbols.at(GSymbol::g5), RatFuncN(PolyN::shifted_product(-3, 5)));
  EXPECT_EQ(cal.symbols.at(GSymbol::g4), RatFuncN(PolyN::shifted_product(-2, 4)));
  EXPECT_EQ(cal.symbols.at(GSymbol::g22), RatFuncN(PolyN::shifted_product(-2, 4) * PolyN{11, 10, 5}));
}

TEST(Calibration, Classification) {
  const auto& cal = shared_calibration();
  ASSERT_EQ(cal.status.size(), 12u);
  std::vector<std::string> suspect;
  for (const auto& [id, d] : cal.status)
    if (!d.valid) suspect.push_back(id.compact());
  EXPECT_EQ(suspect, (std::vector<std::string>{"6", "222"}));

  const auto* six = cal.diagnosis(Partition{6});
  ASSERT_TRUE(six->first_failing_term);
  EXPECT_NE(six->first_failing_term->find("dimension term"), std::string::npos);
  EXPECT_EQ(six->hints, (std::vector<std::string>{"g in this formula fits as g6"}));
  ASSERT_TRUE(six->witness);
  EXPECT_NE(six->witness->residual, 0);

  const auto* triple = cal.diagnosis(Partition{2, 2, 2});
  ASSERT_TRUE(triple->first_failing_term);
  EXPECT_EQ(*triple->first_failing_term, "+483840*f222_6*Theta(6)");
  EXPECT_EQ(triple->failing_ratio, "-1");
}

TEST(Calibration, Deterministic) {
  const auto again = calibrate_builtin();
  EXPECT_EQ(io::calibration_json(again).dump(), io::calibration_json(shared_calibration()).dump());
}

TEST(Calibration, EmptyCorpusRejected) {
  EXPECT_THROW(calibrate(builtin_formulas(), {}, corpus_of_height(5)), DomainError);
}

TEST(Calibration, FifthDegreeFactorFromFundamental) {
  // cof_5 of the vector representation is 1 and dim is N+1, so the identity
  // fixes g5 outright.
  const auto& cal = shared_calibration();
  const auto& f55 = coefficient_polynomial("f5_5");
  const auto& f532 = coefficient_polynomial("f5_32");
  for (int n = 2; n <= 12; ++n) {
    const auto th = theta_at(OrbitLabel{1}, n);
    const Rational expected = Rational(n + 1) * (24 * f55(n) * th.powers[5] - 120 * f532(n) * th.powers[3] * th.powers[2]);
    EXPECT_EQ(cal.symbols.at(GSymbol::g5)(n), expected) << n;
  }
}

TEST(ThetaBlock, VectorRepresentation) {
  const auto& cal = shared_calibration();
  const auto& seven = builtin_formula(Partition{7});
  const auto& five_two = builtin_formula(Partition{5, 2});
  for (int n = 2; n <= 12; ++n) {
    const auto th = theta_at(OrbitLabel{1}, n);
    const auto values = cal.at(n);
    EXPECT_EQ(*theta_block(seven, th, values), -values.at(GSymbol::g) / Rational(n + 1)) << n;
    EXPECT_EQ(*theta_block(five_two, th, values), 0) << n;
    EXPECT_EQ(*phi_residual(identity_of(five_two, cal), MultiplicityTable::for_top(OrbitLabel{1}), n), 0);
  }
}

TEST(ThetaBlock, MissingSymbolIsUndefined) {
  const auto& seven = builtin_formula(Partition{7});
  EXPECT_FALSE(theta_block(builtin_formula(Partition{4, 2}), theta_at(OrbitLabel{1}, 4), {}));
  EXPECT_TRUE(theta_block(seven, theta_at(OrbitLabel{1}, 4), {}));
  EXPECT_FALSE(spec_weights(seven, theta_at(OrbitLabel{1}, 4), {}));
}

TEST(ThetaBlock, OddPowersVanishOnSelfConjugateWeights) {
  const auto& cal = shared_calibration();
  // (2,1) at N=2 is the adjoint of A_2, (1) at N=1 the A_1 doublet
  for (const auto& [top, n] : std::vector<std::pair<OrbitLabel, int>>{{OrbitLabel{2, 1}, 2}, {OrbitLabel{1}, 1}}) {
    const auto th = theta_at(top, n);
    for (int s = 3; s <= 7; s += 2) EXPECT_EQ(th.powers[static_cast<std::size_t>(s)], 0);
    EXPECT_EQ(*theta_block(builtin_formula(Partition{7}), th, cal.at(n)), 0);
    EXPECT_EQ(*theta_block(builtin_formula(Partition{5}), th, cal.at(n)), 0);
  }
}

TEST(PhiResidual, ExampleTableVanishesForValidFormulas) {
  const auto& cal = shared_calibration();
  for (const auto& spec : builtin_formulas()) {
    if (!cal.is_valid(spec.id)) continue;
    EXPECT_EQ(*phi_residual(identity_of(spec, cal), example_table(), 8), 0) << spec.id.compact();
  }
}

TEST(PhiResidual, CorruptedTableDetected) {
  auto t = example_table();
  t.set(OrbitLabel::ones(9), 104);
  EXPECT_NE(*phi_residual(identity_of(builtin_formula(Partition{4}), shared_calibration()), t, 9), 0);
}

TEST(PhiResidual, LinearInMultiplicities) {
  const auto& cal = shared_calibration();
  const auto identity = identity_of(builtin_formula(Partition{4, 3}), cal);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tops = enumerate_partitions(static_cast<int>(oracle::uniform(3, 6)));
    const auto top = tops[static_cast<std::size_t>(oracle::uniform(0, static_cast<long>(tops.size()) - 1))];
    const int n = static_cast<int>(top.size()) + static_cast<int>(oracle::uniform(1, 4));
    auto whole = MultiplicityTable::for_top(top), a = whole, b = whole;
    for (const auto& q : sub_dominants(top)) {
      const long m = oracle::uniform(0, 50), k = oracle::uniform(0, m);
      whole.set(q, m);
      a.set(q, k);
      b.set(q, m - k);
    }
    EXPECT_EQ(*phi_residual(identity, whole, n), *phi_residual(identity, a, n) + *phi_residual(identity, b, n));
  }
}

TEST(Validation, PerturbedCoefficientBecomesSuspect) {
  auto specs = builtin_formulas();
  specs[0].theta_terms[1].f = specs[0].theta_terms[1].f + PolyN{1};
  const auto cal = calibrate(specs, corpus_of_heights(1, 4), corpus_of_heights(5, 6));
  EXPECT_FALSE(cal.is_valid(Partition{7}));
  EXPECT_TRUE(cal.is_valid(Partition{5, 2}));
  EXPECT_EQ(cal.symbols.at(GSymbol::g), RatFuncN(PolyN::shifted_product(-5, 7)));
  const auto report = validate_formula(identity_of(specs[0], cal), corpus_of_height(5), {6, 7, 8});
  EXPECT_FALSE(report.valid);
  ASSERT_TRUE(report.first_failure);
  EXPECT_NE(report.first_failure->residual, 0);
}

TEST(Validation, EmptyCorpusIsNotValid) {
  const auto report = validate_formula(identity_of(builtin_formula(Partition{5}), shared_calibration()), {}, {4, 5});
  EXPECT_FALSE(report.valid);
  EXPECT_EQ(report.checked, 0u);
  EXPECT_FALSE(report.first_failure);
}

TEST(Validation, FifthDegreeOnHeldOutPair) {
  const auto identity = identity_of(builtin_formula(Partition{5}), shared_calibration());
  Corpus one{{OrbitLabel{2, 1}, kostka_table(OrbitLabel{2, 1})}};
  const auto report = validate_formula(identity, one, {4, 5, 6, 7, 8});
  EXPECT_TRUE(report.valid);
  EXPECT_EQ(report.checked, 5u);
}

TEST(Solver, AssembleShapes) {
  const auto id = identity_of(builtin_formula(Partition{4}), shared_calibration());
  const auto sys = assemble_system(example_top, {id}, {8, 9, 10, 11, 12});
  EXPECT_EQ(sys.unknowns.size(), 5u);
  EXPECT_EQ(sys.matrix.rows(), 5u);
  const auto single = assemble_system(OrbitLabel{1, 1}, {id}, {3});
  EXPECT_TRUE(single.unknowns.empty());
  const auto adj = assemble_system(OrbitLabel{2, 1}, {id}, {3, 4});
  EXPECT_EQ(adj.unknowns, std::vector<OrbitLabel>{OrbitLabel::ones(3)});
  EXPECT_EQ(adj.matrix.rows(), 2u);
  for (std::size_t r = 0; r < 2; ++r) EXPECT_EQ(adj.matrix(r, 0) * 2, adj.rhs[r]);
  EXPECT_THROW(assemble_system(example_top, {id}, {6}), DomainError);
}

TEST(Solver, ExampleWithEveryValidFormula) {
  const auto& cal = shared_calibration();
  for (const auto& spec : builtin_formulas()) {
    if (!cal.is_valid(spec.id)) continue;
    const auto r = solve_multiplicities(example_top, {identity_of(spec, cal)}, {{8, 9, 10, 11, 12}, false});
    ASSERT_TRUE(r.solution);
    EXPECT_EQ(*r.solution, example_table()) << spec.id.compact();
    EXPECT_EQ(r.nullity, 0u);
  }
}

TEST(Solver, SmallCases) {
  const auto id = identity_of(builtin_formula(Partition{4}), shared_calibration());
  const auto trivial = solve_multiplicities(OrbitLabel{1, 1, 1}, {id});
  EXPECT_EQ(*trivial.solution, MultiplicityTable::for_top(OrbitLabel{1, 1, 1}));
  EXPECT_EQ(trivial.rows, 0u);
  const auto adj = solve_multiplicities(OrbitLabel{2, 1}, {id}, {{3, 4, 5}, true});
  EXPECT_EQ(adj.solution->get(OrbitLabel::ones(3)), 2);
  EXPECT_TRUE(*adj.oracle_agrees);
}

TEST(Solver, DefaultRanksAndEmptyOrbitWarnings) {
  const auto id = identity_of(builtin_formula(Partition{3, 2}), shared_calibration());
  const auto r = solve_multiplicities(OrbitLabel{4}, {id}, {{}, true});
  // sigma + 1 .. sigma + u + 2 with four unknowns
  EXPECT_EQ(r.ranks, (std::vector<int>{2, 3, 4, 5, 6, 7}));
  EXPECT_TRUE(*r.oracle_agrees);
  EXPECT_FALSE(r.warnings.empty());
}

TEST(Solver, NonIntegralOrNegativeIsAnError) {
  // weights that force m * dim(1,1) = -dim(2)
  MultiplicityIdentity bogus{"bogus", Partition{2}, [](const OrbitLabel&, int) { return IdentityWeights{Rational(0), Rational(1)}; }};
  EXPECT_THROW(solve_multiplicities(OrbitLabel{2}, {bogus}, {{2, 3}, false}), ValidationError);
}

TEST(Solver, AgreesWithKostkaNumbers) {
  const auto ids = valid_identities(builtin_formulas(), shared_calibration());
  for (int h = 1; h <= 6; ++h)
    for (const auto& top : enumerate_partitions(h)) {
      const auto r = solve_multiplicities(top, ids);
      EXPECT_EQ(*r.solution, kostka_table(top)) << top.to_string();
    }
}

TEST(Derive, AnsatzBasis) {
  EXPECT_EQ(ansatz_basis(Partition{4}), (std::vector<Partition>{Partition{4}, Partition{2, 2}, Partition{2}, Partition{}}));
  EXPECT_EQ(ansatz_basis(Partition{5}), (std::vector<Partition>{Partition{5}, Partition{3, 2}, Partition{3}}));
  EXPECT_EQ(ansatz_basis(Partition{8}).size(), 15u);
}

TEST(Derive, RejectsBadIds) {
  EXPECT_THROW(derive_formula(Partition{3, 2, 1}, default_fit_corpus(), default_holdout_corpus()), DomainError);
  EXPECT_THROW(derive_formula(Partition{2}, default_fit_corpus(), default_holdout_corpus()), DomainError);
  EXPECT_THROW(derive_formula(Partition{4}, corpus_of_height(2), default_holdout_corpus()), DomainError);
}

TEST(Derive, LowDegreeFormulasMatchTranscriptions) {
  const auto& cal = shared_calibration();
  for (const auto& id : {Partition{4}, Partition{2, 2}, Partition{5}}) {
    const auto f = derive_formula(id, default_fit_corpus(), default_holdout_corpus());
    EXPECT_GT(f.validated_pairs, 0u);
    const auto derived = identity_of(f);
    const auto transcribed = identity_of(builtin_formula(id), cal);
    for (int h = 2; h <= 5; ++h)
      for (const auto& top : enumerate_partitions(h)) {
        const auto a = solve_multiplicities(top, {derived});
        const auto b = solve_multiplicities(top, {transcribed});
        EXPECT_EQ(*a.solution, *b.solution) << id.compact() << " " << top.to_string();
      }
    const auto r = solve_multiplicities(example_top, {derived}, {{8, 9, 10, 11, 12}, false});
    EXPECT_EQ(*r.solution, example_table());
  }
}

TEST(Json, TableRoundTrip) {
  const auto j = io::table_json(example_table(), 8);
  EXPECT_EQ(j.dump(), R"({"top":"3,2,1,1,1,1","rank":8,"multiplicities":{"1,1,1,1,1,1,1,1,1":105,"2,1,1,1,1,1,1,1":35,"2,2,1,1,1,1,1":10,"2,2,2,1,1,1":2,"3,1,1,1,1,1,1":5,"3,2,1,1,1,1":1}})");
  const auto back = io::table_from_json(io::Json::parse(j.dump()));
  EXPECT_EQ(back.table, example_table());
  EXPECT_EQ(back.rank, 8);
  EXPECT_EQ(io::table_json(MultiplicityTable{}, 5).dump(), R"({"top":"","rank":5,"multiplicities":{}})");
}

TEST(Json, BigIntegersAndRationalsAreExact) {
  const Integer big("123456789012345678901234567890");
  EXPECT_EQ(io::integer_from_json(io::integer_json(big)), big);
  for (int i = 0; i < 50; ++i) {
    const Rational r = oracle::random_wide_rational() * oracle::random_wide_rational();
    EXPECT_EQ(io::rational_from_json(io::Json::parse(io::rational_json(r).dump())), r);
  }
  EXPECT_EQ(io::rational_json(Rational(3)).get<std::string>(), "3");
  EXPECT_EQ(io::rational_json(make_rational(-3, 6)).get<std::string>(), "-1/2");
}

TEST(Json, CalibrationRoundTrip) {
  const auto j = io::calibration_json(shared_calibration());
  const auto back = io::calibration_from_json(io::Json::parse(j.dump()));
  EXPECT_EQ(io::calibration_json(back).dump(), j.dump());
  EXPECT_EQ(back.symbols, shared_calibration().symbols);
  EXPECT_EQ(back.valid_ids(), shared_calibration().valid_ids());
}

TEST(Json, DerivedRoundTrip) {
  const auto f = derive_formula(Partition{2, 2}, default_fit_corpus(), default_holdout_corpus());
  const auto back = io::derived_from_json(io::Json::parse(io::derived_json(f).dump()));
  EXPECT_EQ(back.coefficients, f.coefficients);
  EXPECT_EQ(back.min_rank, f.min_rank);
  EXPECT_EQ(io::derived_json(back).dump(), io::derived_json(f).dump());
}

TEST(ThetaClosedForm, MatchesDirectSums) {
  for (const auto& top : {OrbitLabel{1}, OrbitLabel{2, 1}, example_top})
    for (int s = 2; s <= 5; ++s) {
      const auto f = theta_closed_form(top, s);
      for (int n = static_cast<int>(top.size()); n <= 20; ++n) EXPECT_EQ(f(n), theta_power(s, to_dynkin(top, n)));
    }
}
