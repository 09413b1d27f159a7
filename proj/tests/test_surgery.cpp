#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sst/geography.hpp"
#include "sst/surgery.hpp"
#include "support/random_models.hpp"

using namespace sst;

namespace {
const CohClass f{1};
}

TEST_CASE("elliptic_surface: series, lift and Betti data") {
    SECTION("K3 = E(2)") {
        FourManifoldModel M = elliptic_surface(2);
        CHECK(M.basic_classes.size() == 1);
        CHECK(M.basic_classes.at({0}) == 1);
        CHECK(M.b2plus == 3);
        CHECK(M.b2minus == 19);
        CHECK(numerical_invariants(M).c1sq == 0);
        CHECK(M.chi_h() == 2);
    }
    SECTION("E(3) is the odd sinh") {
        FourManifoldModel M = elliptic_surface(3);
        CHECK(M.basic_classes.size() == 2);
        CHECK(M.basic_classes.at({1}) == 1);
        CHECK(M.basic_classes.at({-1}) == -1);
        CHECK(M.lift.upsilon == CohClass{1});
    }
    SECTION("E(4) binomial expansion with twisted coefficients") {
        FourManifoldModel M = elliptic_surface(4);
        SWSeries s = twisted_series(M);
        CHECK(s.coeff({2}) == 1);
        CHECK(s.coeff({0}) == -2);
        CHECK(s.coeff({-2}) == 1);
    }
    SECTION("genus raises the exponent") {
        FourManifoldModel M = elliptic_surface(1, 1);  // exponent 1
        CHECK(M.b1 == 2);
        CHECK(M.basic_classes.size() == 2);
        CHECK(validate_model(M).ok());
    }
    SECTION("negative exponent rejected") {
        CHECK_THROWS_AS(elliptic_surface(1, 0), InputError);
    }
    SECTION("all E(n) validate") {
        for (long long n = 2; n <= 12; ++n) CHECK(validate_model(elliptic_surface(n)).ok());
    }
}

TEST_CASE("blowup: lattice, lift, series and invariants") {
    FourManifoldModel K3 = elliptic_surface(2);
    FourManifoldModel B = blowup(K3);

    SECTION("classes and twisted coefficients") {
        SWSeries s = twisted_series(B);
        CHECK(s.size() == 2);
        CHECK(s.coeff({0, -1}) == 1);
        CHECK(s.coeff({0, 1}) == -1);
        CHECK(B.lift.upsilon == CohClass{0, 1});
        CHECK(numerical_invariants(B).c1sq == -1);
        CHECK(B.chi_h() == 2);
        CHECK(validate_model(B).ok());
    }
    SECTION("chi_h invariant, c1^2 drops by one, order rises by one") {
        for (long long n = 2; n <= 6; ++n) {
            FourManifoldModel M = elliptic_surface(n);
            FourManifoldModel MB = blowup(M);
            CHECK(MB.chi_h() == M.chi_h());
            CHECK(numerical_invariants(MB).c1sq == numerical_invariants(M).c1sq - 1);
            VanishingOrder o1 = exact_order(twisted_series(M));
            VanishingOrder o2 = exact_order(twisted_series(MB));
            REQUIRE(o1.is_exact());
            REQUIRE(o2.is_exact());
            CHECK(o2.value == o1.value + 1);
            CHECK(twisted_series(MB).size() == 2 * twisted_series(M).size());
        }
    }
    SECTION("blowup preserves SST on E(4)") {
        CHECK(sst_check(blowup(elliptic_surface(4))).is_sst);
    }
}

TEST_CASE("fiber_sum: the elliptic composition law") {
    FourManifoldModel K3 = elliptic_surface(2);

    SECTION("K3 #_f K3 = E(4) exactly") {
        FourManifoldModel S = fiber_sum(K3, f, K3, f);
        FourManifoldModel E4 = elliptic_surface(4);
        CHECK(equal_up_to_global_sign(twisted_series(S), twisted_series(E4)));
        CHECK(twisted_series(S) == twisted_series(E4));  // sign convention lands on +
        CHECK(S.chi_h() == 4);
        CHECK(numerical_invariants(S).c1sq == 0);
        CHECK(S.b2plus == E4.b2plus);
        CHECK(S.b2minus == E4.b2minus);
    }
    SECTION("iterated sums reproduce E(n), n = 4, 6, 8") {
        FourManifoldModel acc = K3;
        for (long long n = 4; n <= 8; n += 2) {
            acc = fiber_sum(acc, f, K3, f);
            CHECK(equal_up_to_global_sign(twisted_series(acc), twisted_series(elliptic_surface(n))));
        }
    }
    SECTION("odd ladder via an E(3) seed") {
        FourManifoldModel acc = elliptic_surface(3);
        for (long long n = 5; n <= 7; n += 2) {
            acc = fiber_sum(acc, f, K3, f);
            CHECK(equal_up_to_global_sign(twisted_series(acc), twisted_series(elliptic_surface(n))));
        }
    }
    SECTION("valuations add with the sinh^2 offset") {
        std::mt19937 rng(7);
        for (int t = 0; t < 20; ++t) {
            FourManifoldModel A = testsupport::random_sst_model(rng);
            FourManifoldModel B = testsupport::random_sst_model(rng);
            if (twisted_series(A).empty() || twisted_series(B).empty()) continue;
            FourManifoldModel S =
                fiber_sum(A, testsupport::torus_class(A), B, testsupport::torus_class(B));
            VanishingOrder oa = exact_order(twisted_series(A));
            VanishingOrder ob = exact_order(twisted_series(B));
            VanishingOrder os = exact_order(twisted_series(S));
            REQUIRE(os.is_exact());
            CHECK(os.value == oa.value + ob.value + 2);
        }
    }
    SECTION("non-null torus class rejected") {
        FourManifoldModel B = blowup(K3);
        CHECK_THROWS_AS(fiber_sum(B, CohClass{0, 1}, K3, f), InputError);
    }
    SECTION("fiber sum of SST models is SST") {
        std::mt19937 rng(13);
        for (int t = 0; t < 20; ++t) {
            FourManifoldModel A = testsupport::random_sst_model(rng);
            FourManifoldModel B = testsupport::random_sst_model(rng);
            FourManifoldModel S =
                fiber_sum(A, testsupport::torus_class(A), B, testsupport::torus_class(B));
            CHECK(sst_check(S).is_sst);
        }
    }
}

TEST_CASE("knot_surgery: Alexander multipliers") {
    FourManifoldModel K3 = elliptic_surface(2);

    SECTION("unknot is the identity") {
        FourManifoldModel R = knot_surgery(K3, f, {1});
        CHECK(twisted_series(R) == twisted_series(K3));
        CHECK(R.b2plus == K3.b2plus);
        CHECK(R.b2minus == K3.b2minus);
    }
    SECTION("trefoil on the K3 fiber class") {
        FourManifoldModel R = knot_surgery(K3, f, {1, -1, 1});
        SWSeries s = twisted_series(R);
        CHECK(s.size() == 3);
        CHECK(s.coeff({2}) == 1);
        CHECK(s.coeff({0}) == -1);
        CHECK(s.coeff({-2}) == 1);
    }
    SECTION("preserves SST and vanishing order") {
        std::mt19937 rng(19);
        for (int t = 0; t < 20; ++t) {
            FourManifoldModel A = testsupport::random_sst_model(rng);
            FourManifoldModel R = knot_surgery(A, testsupport::torus_class(A), {1, -1, 1});
            CHECK(sst_check(R).is_sst);
            CHECK(exact_order(twisted_series(R)) == exact_order(twisted_series(A)));
        }
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(knot_surgery(K3, f, {1, 1}), InputError);        // even length
        CHECK_THROWS_AS(knot_surgery(K3, f, {1, -1, 2}), InputError);    // asymmetric
        CHECK_THROWS_AS(knot_surgery(K3, f, {1, 1, 1}), InputError);     // Delta(1) = 3
    }
}

TEST_CASE("log_transform: lattice refinement and multiplier") {
    FourManifoldModel K3 = elliptic_surface(2);

    SECTION("p = 1 is the identity") {
        FourManifoldModel R = log_transform(K3, f, 1);
        CHECK(twisted_series(R) == twisted_series(K3));
    }
    SECTION("p = 2 on K3") {
        FourManifoldModel R = log_transform(K3, f, 2);
        SWSeries s = twisted_series(R);
        CHECK(s.size() == 2);
        CHECK(s.coeff({1}) == 1);
        CHECK(s.coeff({-1}) == 1);
        CHECK(R.chi_h() == K3.chi_h());
        CHECK(numerical_invariants(R).c1sq == 0);
        CHECK(R.b2plus == K3.b2plus);
    }
    SECTION("preserves SST for p = 2, 3") {
        std::mt19937 rng(23);
        for (int t = 0; t < 20; ++t) {
            FourManifoldModel A = testsupport::random_sst_model(rng);
            for (long long p : {2LL, 3LL}) {
                FourManifoldModel R = log_transform(A, testsupport::torus_class(A), p);
                CHECK(sst_check(R).is_sst);
                CHECK(exact_order(twisted_series(R)) == exact_order(twisted_series(A)));
            }
        }
    }
    SECTION("p = 0 rejected") {
        CHECK_THROWS_AS(log_transform(K3, f, 0), InputError);
    }
}

TEST_CASE("surgeries commute with the relift sign law") {
    std::mt19937 rng(29);
    for (int t = 0; t < 15; ++t) {
        FourManifoldModel A = testsupport::random_sst_model(rng);
        FourManifoldModel B = blowup(A);
        // h = v + 2w stays compatible after surgery
        CohClass h = B.lift.upsilon;
        const int expected = parity_sign(B.lattice.self_pairing(h));
        CHECK(relift_sign(B, h) == expected);
        FourManifoldModel L = log_transform(A, testsupport::torus_class(A), 2);
        CohClass hl = L.lift.upsilon;
        CHECK(relift_sign(L, hl) == parity_sign(L.lattice.self_pairing(hl)));
    }
}
