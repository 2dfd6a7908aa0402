#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "criteria.hpp"

using namespace charres;

namespace {
Cyclotomic b5() { return Cyclotomic::root(5) + Cyclotomic::root(5, 4); }
}

TEST_CASE("sqrt bound filter") {
    // degree q^3-1 = 124 at q=5 against |2^3.L3(2)| = 1344
    CHECK(sqrt_bound_filter(124, 1344, 1).status == Status::Reducible);
    CHECK(sqrt_bound_filter(1, 1344, 1).status == Status::Inconclusive);
    // degree 27 against 3.P: |3.P| = 34992, |Z| >= 3, 27^2 = 729 <= 11664
    CHECK(sqrt_bound_filter(27, 34992, 3).status == Status::Inconclusive);
    CHECK_THROWS_AS(sqrt_bound_filter(0, 1, 1), DomainError);
}

TEST_CASE("sqrt bound filter is monotone in the degree") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<long> deg(1, 2000), ord(1, 4000000), cen(1, 4);
    for (int i = 0; i < 500; ++i) {
        Integer d = deg(rng), m = ord(rng), z = cen(rng);
        bool fails_d = sqrt_bound_filter(d, m, z).status == Status::Reducible;
        bool fails_d1 = sqrt_bound_filter(d + 1, m, z).status == Status::Reducible;
        if (fails_d) CHECK(fails_d1);  // increasing the degree never turns fails into passes
    }
}

TEST_CASE("degree divides rule") {
    // q=5: X32(1) = 126 would have to divide |SL3(5):2| = 744000
    CHECK(Integer(2) * 125 * 124 * 24 == 744000);
    CHECK(degree_divides(126, 744000).status == Status::Reducible);
    // X18(1) = 280 against |P_b| = 5^6*24*4 = 1500000
    CHECK(degree_divides(280, 1500000).status == Status::Reducible);
    CHECK(degree_divides(1, 744000).status == Status::Inconclusive);
    CHECK(degree_divides(124, 744000).status == Status::Inconclusive);
}

TEST_CASE("frobenius criterion") {
    CHECK(frobenius_irreducible(Rational(1)).status == Status::Irreducible);
    CHECK(frobenius_irreducible(Rational(3)).status == Status::Reducible);
    CHECK_THROWS_AS(frobenius_irreducible(Rational(1152, 1024)), DataError);
    CHECK_THROWS_AS(frobenius_irreducible(Rational(0)), DataError);
    CHECK_THROWS_AS(frobenius_irreducible(Rational(-2)), DataError);
}

TEST_CASE("clifford solutions") {
    auto sols = clifford_solutions(3, 27);
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].e == 1);
    CHECK(sols[0].t == 3);
    CHECK(sols[0].theta_degree == 9);

    auto with_theta = clifford_solutions(3, 12, std::set<Integer>{1, 2, 4});
    REQUIRE(with_theta.size() == 1);
    CHECK(with_theta[0].e == 1);
    CHECK(with_theta[0].t == 3);
    CHECK(with_theta[0].theta_degree == 4);

    auto six = clifford_solutions(6, 12, std::set<Integer>{1, 2, 4});
    REQUIRE(six.size() == 1);
    CHECK(six[0].e == 1);
    CHECK(six[0].t == 6);
    CHECK(six[0].theta_degree == 2);

    auto trivial = clifford_solutions(1, 77);
    REQUIRE(trivial.size() == 1);
    CHECK(trivial[0].e == 1);
    CHECK(trivial[0].t == 1);
    CHECK(trivial[0].theta_degree == 77);

    CHECK(clifford_solutions(5, 7).empty());
    CHECK(all_multiplicity_one(sols));
    CHECK_FALSE(all_multiplicity_one({}));
}

TEST_CASE("clifford solutions are exhaustive (brute force cross-check)") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<long> ms(1, 60), ds(1, 960);
    for (int i = 0; i < 200; ++i) {
        long m = ms(rng), d = ds(rng);
        auto sols = clifford_solutions(m, d);
        // independent route: try every (e, t, theta) in range
        std::vector<CliffordSolution> brute;
        for (long e = 1; e <= m; ++e)
            for (long t = 1; t <= m; ++t) {
                if (e * e * t != m) continue;
                for (long th = 1; th <= d; ++th)
                    if (e * t * th == d) brute.push_back({e, t, th});
            }
        REQUIRE(sols.size() == brute.size());
        for (size_t j = 0; j < sols.size(); ++j) {
            CHECK(sols[j].e == brute[j].e);
            CHECK(sols[j].t == brute[j].t);
            CHECK(sols[j].theta_degree == brute[j].theta_degree);
            CHECK(sols[j].e * sols[j].e * sols[j].t == m);
            CHECK(sols[j].e * sols[j].t * sols[j].theta_degree == d);
        }
    }
}

TEST_CASE("index p split") {
    // chi(1)=12 restricting to U3(3) as 2 x (degree 6) forces reducibility
    CHECK(index_p_split(12, 2, {{Integer(6), 2}}).status == Status::Reducible);
    // an irreducible restriction is allowed
    CHECK(index_p_split(12, 2, {{Integer(12), 1}}).status == Status::Inconclusive);
    // p distinct conjugates of equal degree are allowed
    CHECK(index_p_split(12, 2, {{Integer(6), 1}, {Integer(6), 1}}).status == Status::Inconclusive);
    CHECK(index_p_split(12, 3, {{Integer(4), 1}, {Integer(4), 1}, {Integer(4), 1}}).status ==
          Status::Inconclusive);
    // wrong piece count
    CHECK(index_p_split(12, 2, {{Integer(4), 3}}).status == Status::Reducible);
    // two pieces of unequal degree cannot be conjugate
    CHECK(index_p_split(12, 2, {{Integer(8), 1}, {Integer(4), 1}}).status == Status::Reducible);
    CHECK_THROWS_AS(index_p_split(12, 2, {{Integer(5), 2}}), DomainError);  // degree sum mismatch
}

TEST_CASE("O_ell rule") {
    CHECK(oell_rule(3).status == Status::Reducible);
    CHECK(oell_rule(1).status == Status::Inconclusive);
    CHECK(oell_rule(8).status == Status::Reducible);
    CHECK_THROWS_AS(oell_rule(0), DomainError);
}

TEST_CASE("block separation witnesses at q = 7") {
    Integer q = 7, q3 = 343;
    Integer L = q3 * (q3 + 1);  // class length q^3(q^3+1)
    // alpha trivial: d = -q^3 - q^3(q^3+1)
    Verdict w1 = block_separation_witness(q3 + 1, Cyclotomic(-1), 1, Cyclotomic(1), L, 2);
    CHECK(w1.status == Status::Separated);
    // alpha of degree q^2-q with value 0: d = -q^3
    Verdict w2 = block_separation_witness(q3 + 1, Cyclotomic(-1), q * q - q, Cyclotomic(0), L, 2);
    CHECK(w2.status == Status::Separated);
    // alpha of degree q^2-q+1 with value 1: d = -q^3 - q^3(q+1)
    Verdict w3 = block_separation_witness(q3 + 1, Cyclotomic(-1), q * q - q + 1, Cyclotomic(1), L, 2);
    CHECK(w3.status == Status::Separated);
}

TEST_CASE("block separation degrades to inconclusive") {
    // rho = alpha gives difference 0, divisible by every l
    CHECK(block_separation_witness(5, Cyclotomic(1), 5, Cyclotomic(1), 10, 2).status ==
          Status::Inconclusive);
    // irrational difference
    CHECK(block_separation_witness(5, b5(), 1, Cyclotomic(0), 7, 2).status == Status::Inconclusive);
    // non-integer rational difference: 1*(1/2 - 0) = 1/2
    CHECK(block_separation_witness(2, Cyclotomic(1), 1, Cyclotomic(0), 1, 2).status ==
          Status::Inconclusive);
    // integer but divisible by l
    CHECK(block_separation_witness(1, Cyclotomic(4), 1, Cyclotomic(0), 1, 2).status ==
          Status::Inconclusive);
}

TEST_CASE("verdicts carry recomputable evidence") {
    Verdict v = sqrt_bound_filter(124, 1344, 1);
    bool saw_degree = false, saw_bound = false;
    for (const auto& [k, val] : v.evidence) {
        if (k == "degree^2") {
            CHECK(val == "15376");
            saw_degree = true;
        }
        if (k == "|M|/|Z|") {
            CHECK(val == "1344");
            saw_bound = true;
        }
    }
    CHECK(saw_degree);
    CHECK(saw_bound);
}
