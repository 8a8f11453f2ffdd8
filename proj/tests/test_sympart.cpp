#include <doctest.h>

#include "pillow/characters.hpp"
#include "pillow/partition.hpp"

using namespace pillow;

TEST_CASE("partition enumeration") {
    CHECK(enum_partitions(0) == std::vector<Partition>{{}});
    std::vector<Partition> p4{{4}, {3, 1}, {2, 2}, {2, 1, 1}, {1, 1, 1, 1}};
    CHECK(enum_partitions(4) == p4);
    // pentagonal-number recurrence as an independent oracle for p(n)
    std::vector<long> pn(33, 0);
    pn[0] = 1;
    for (int n = 1; n <= 32; ++n) {
        long s = 0;
        for (int k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            long sgn = (k % 2 == 1) ? 1 : -1;
            if (g1 <= n) s += sgn * pn[n - g1];
            if (g2 <= n) s += sgn * pn[n - g2];
        }
        pn[n] = s;
    }
    CHECK(pn[32] == 8349);
    CHECK(long(enum_partitions(12).size()) == pn[12]);
}

TEST_CASE("centralizer order") {
    CHECK(centralizer_order({2, 2}) == 8);
    CHECK(centralizer_order({3, 1, 1}) == 6);
    for (int n : {3, 5, 7}) CHECK(centralizer_order(Partition(n, 1)) == factorial(n));
    // sum over classes of n!/z = n!
    for (int n = 1; n <= 7; ++n) {
        Int s = 0;
        for (auto& mu : enum_partitions(n)) s += factorial(n) / centralizer_order(mu);
        CHECK(s == factorial(n));
    }
}

TEST_CASE("characters: examples and orthogonality") {
    CHECK(character({3}, {2, 1}) == 1);
    CHECK(character({1, 1}, {2}) == -1);
    CHECK(character({2, 1}, {1, 1, 1}) == 2);
    CHECK_THROWS(character({2, 1}, {2, 2}));
    // column orthogonality for n <= 8
    for (int n = 1; n <= 8; ++n) {
        auto& ps = enum_partitions(n);
        for (size_t i = 0; i < ps.size(); ++i)
            for (size_t j = i; j < ps.size(); ++j) {
                Rat s = 0;
                for (auto& mu : ps)
                    s += Rat(long(character(ps[i], mu))) * Rat(long(character(ps[j], mu))) /
                         Rat(centralizer_order(mu));
                CHECK(s == (i == j ? 1 : 0));
            }
    }
}

TEST_CASE("dimensions: hook formula vs MN, sum of squares") {
    for (int n = 1; n <= 8; ++n) {
        Int ss = 0;
        for (auto& lam : enum_partitions(n)) {
            Int d = dimension(lam);
            CHECK(d == Int(long(character(lam, Partition(n, 1)))));
            ss += d * d;
        }
        CHECK(ss == factorial(n));
    }
    CHECK(dimension({5}) == 1);
    CHECK(dimension({2, 1}) == 2);
    CHECK(dimension({2, 2}) == 2);
}

TEST_CASE("balanced partitions and 2-quotients") {
    CHECK(is_balanced({}));
    CHECK(!is_balanced({1}));
    CHECK(is_balanced({2, 1, 1}));
    CHECK(is_balanced({2}));
    for (int n = 0; n <= 16; ++n)
        for (auto& lam : enum_partitions(n)) CHECK(is_balanced(lam) == is_balanced_by_core(lam));
    // recombination: |lam| = 2(|alpha|+|beta|) for balanced lam
    for (int n = 0; n <= 12; n += 2)
        for (auto& lam : enum_partitions(n)) {
            if (!is_balanced(lam)) continue;
            auto [a, b] = two_quotients(lam);
            CHECK(part_size(lam) == 2 * (part_size(a) + part_size(b)));
        }
}

TEST_CASE("hook weight sums") {
    CHECK(hook_weight_sum({1}, 1) == 1);
    CHECK(hook_weight_sum({2}, 1) == 2);
    CHECK(hook_weight_sum({2, 1}, 3) == 11);  // hooks 3,1,1
    CHECK(hook_weight_sum({2, 1}, -1) == Rat(1, 9) + 1 + 1);
}

TEST_CASE("normalized characters calibrate f1 and f2") {
    for (int n = 1; n <= 8; ++n)
        for (auto& lam : enum_partitions(n)) {
            CHECK(normalized_character({1}, lam) == Rat(n));
            CHECK(normalized_character({}, lam) == 1);
        }
}

TEST_CASE("ramification profile invariants") {
    RamificationProfile q{{3, 1, 1, 1}, {2}};
    q.validate();
    CHECK(q.genus() == 1);
    CHECK(q.dimension() == 5);
    CHECK(q.weight_bound() == 6);
    RamificationProfile bad{{2, 2}, {}};
    CHECK_THROWS(bad.validate());
}
