#include <gtest/gtest.h>

#include "canonq/laws.hpp"

using namespace canonq;

namespace {

void expect_all_pass(const LawReport& rep) {
  for (const auto& r : rep.results) {
    EXPECT_TRUE(r.passed) << rep.suite << "/" << r.law << ": " << r.counterexample.value_or("");
    EXPECT_GT(r.cases, 0u);
  }
}

bool same(const LawReport& a, const LawReport& b) {
  if (a.results.size() != b.results.size()) return false;
  for (std::size_t k = 0; k < a.results.size(); ++k)
    if (a.results[k].law != b.results[k].law || a.results[k].passed != b.results[k].passed ||
        a.results[k].cases != b.results[k].cases || a.results[k].counterexample != b.results[k].counterexample)
      return false;
  return true;
}

}  // namespace

TEST(LawSuites, RingPasses) { expect_all_pass(ring_law_suite(300, 5)); }
TEST(LawSuites, PoissonPasses) { expect_all_pass(poisson_law_suite(300, 5)); }
TEST(LawSuites, WeylPasses) { expect_all_pass(weyl_law_suite(300, 5)); }

TEST(LawSuites, ExpectedLawsPresent) {
  const LawReport p = poisson_law_suite(1, 1);
  for (const char* law : {"antisymmetry", "bilinearity", "jacobi", "leibniz", "field-apply", "field-homomorphism",
                          "grading", "closure"})
    EXPECT_NE(p.find(law), nullptr) << law;
  const LawReport w = weyl_law_suite(1, 1);
  for (const char* law : {"associativity", "commutator-jacobi", "derivation-rule", "canonical-commutation"})
    EXPECT_NE(w.find(law), nullptr) << law;
  EXPECT_EQ(w.find("missing"), nullptr);
}

TEST(LawSuites, CaseCountHonoured) {
  for (const auto& r : weyl_law_suite(37, 2).results) EXPECT_EQ(r.cases, 37u);
}

TEST(LawSuites, SeedReproducible) {
  EXPECT_TRUE(same(poisson_law_suite(50, 99), poisson_law_suite(50, 99)));
  EXPECT_TRUE(same(weyl_law_suite(50, 99), weyl_law_suite(50, 99)));
  EXPECT_EQ(ring_law_suite(10, 3).seed, 3u);
}
