#include <doctest.h>

#include "pillow/qseries.hpp"
#include "pillow/shifted.hpp"

using namespace pillow;

TEST_CASE("regularization constants") {
    CHECK(gamma_constant(0) == Rat(1, 2));
    CHECK(gamma_constant(1) == 0);
    CHECK(gamma_constant(2) == Rat(-1, 8));
    CHECK(gamma_constant(3) == 0);
    CHECK(gamma_constant(4) == Rat(5, 32));
    for (int l = 0; l <= 8; ++l)
        CHECK(Rat(factorial(l)) * beta_constant(l + 1) ==
              (1 - Rat(1) / rat_pow(Rat(2), l)) * zeta_negative(l));
}

TEST_CASE("eval_p") {
    for (int n = 0; n <= 8; ++n)
        for (auto& lam : enum_partitions(n)) CHECK(eval_p(1, lam) == Rat(n) - Rat(1, 24));
    CHECK(eval_p(1, {}) == Rat(-1, 24));
    CHECK(eval_p(2, {1}) == 0);
}

TEST_CASE("eval_pbar and balancedness") {
    CHECK(eval_pbar(0, {}) == Rat(1, 2));
    for (int n = 0; n <= 16; ++n)
        for (auto& lam : enum_partitions(n))
            CHECK(is_balanced(lam) == (eval_pbar(0, lam) == Rat(1, 2)));
    // spot values used throughout the engine
    CHECK(eval_pbar(1, {2}) == 2);
    CHECK(eval_pbar(1, {1, 1}) == -2);
    CHECK(eval_pbar(2, {2}) == Rat(15, 8));
    CHECK(eval_pbar(4, {3, 1}) == Rat(-1083, 32));
    CHECK(eval_pbar(1, {2, 1, 1}) == 4);
}

TEST_CASE("f in the p basis and back") {
    for (int n = 0; n <= 10; ++n)
        for (auto& lam : enum_partitions(n)) CHECK(eval_f({2}, lam) == eval_p(2, lam) / 2);
    ShiftedSymElement f2 = fmu_to_p_basis({2});
    ShiftedSymElement half_p2 = ShiftedSymElement::monomial({{2}, {}}, Rat(1, 2));
    CHECK(f2 == half_p2);
    ShiftedSymElement f1 = fmu_to_p_basis({1});
    ShiftedSymElement expect = ShiftedSymElement::monomial({{1}, {}}, 1) +
                               ShiftedSymElement::constant(Rat(1, 24));
    CHECK(f1 == expect);
    // p1 -> f basis: p1 = f1 - 1/24 f_empty
    auto dec = p_monomial_to_f_basis({1});
    Rat c1 = 0, c0 = 0;
    for (auto& [c, mu] : dec) {
        if (mu == Partition{1}) c1 = c;
        if (mu.empty()) c0 = c;
    }
    CHECK(c1 == 1);
    CHECK(c0 == Rat(-1, 24));
    // mutual inverse on a weight-4 monomial: p2 expressed in f's evaluates back
    auto dec2 = p_monomial_to_f_basis({2, 1});
    for (int n = 0; n <= 8; ++n)
        for (auto& lam : enum_partitions(n)) {
            Rat direct = eval_p(2, lam) * eval_p(1, lam);
            Rat viaf = 0;
            for (auto& [c, mu] : dec2) viaf += c * eval_f(mu, lam);
            CHECK(direct == viaf);
        }
}

TEST_CASE("g evaluation and expansion") {
    // g_empty = 1 on balanced lambdas
    for (int n = 0; n <= 8; n += 2)
        for (auto& lam : enum_partitions(n)) {
            if (!is_balanced(lam)) continue;
            CHECK(eval_g({}, lam) == 1);
        }
    CHECK_THROWS(eval_g({}, {1}));  // unbalanced
    ShiftedSymElement g11 = expand_g({1, 1});
    CHECK(g11 == ShiftedSymElement::monomial({{}, {1}}, Rat(1, 2)));
    ShiftedSymElement g = expand_g({3, 1, 1, 1});
    ShiftedSymElement expect;
    expect.add_term({{1}, {1}}, Rat(-1, 4));
    expect.add_term({{}, {1, 1, 1}}, Rat(1, 108));
    expect.add_term({{}, {2, 1}}, Rat(-1, 36));
    expect.add_term({{}, {1}}, Rat(3, 8));
    expect.add_term({{}, {3}}, Rat(2, 27));
    CHECK(g == expect);
    CHECK(g.weight() <= 3);
    // pointwise agreement on balanced partitions up to size 12 (beyond the solve sizes)
    for (int n = 6; n <= 12; n += 2)
        for (auto& lam : enum_partitions(n)) {
            if (!is_balanced(lam)) continue;
            CHECK(g.evaluate(lam) == eval_g({3, 1, 1, 1}, lam));
        }
}

TEST_CASE("pbar monomials in the g span") {
    for (const Partition& target : {Partition{1}, Partition{2}, Partition{1, 1}, Partition{2, 1}}) {
        auto span = pbar_monomial_in_g_span(target);
        ShiftedSymElement recon;
        for (auto& t : span) {
            ShiftedSymElement e = expand_g(t.nu) * ShiftedSymElement::monomial({t.h, {}}, t.coeff);
            recon = recon + e;
            long wh = 0;
            for (int l : t.h) wh += l + 1;
            CHECK(wh + part_size(t.nu) / 2 <= part_size(target));
        }
        CHECK(recon == ShiftedSymElement::monomial({{}, target}));
    }
}

TEST_CASE("monomial basis counting") {
    // weight <= 3: 1; pbar1; pbar1^2; pbar1^3; pbar2; pbar2 pbar1; pbar3; p1; p1 pbar1; p2
    CHECK(monomials_up_to_weight(3).size() == 10);
}
