#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "seclin/field.hpp"
#include "seclin/simulate.hpp"

using namespace seclin;

TEST_CASE("prime field arithmetic basics") {
    const FieldSpec f7 = FieldSpec::gf(7);
    CHECK(f7.add(f7.from_int(5), f7.from_int(4)) == f7.from_int(2));
    CHECK(f7.mul(f7.from_int(3), f7.from_int(5)) == f7.one());
    CHECK(f7.inv(f7.from_int(3)) == f7.from_int(5));
    CHECK(f7.from_int(-1) == f7.from_int(6));
    CHECK(f7.sub(f7.from_int(2), f7.from_int(5)) == f7.from_int(4));

    const FieldSpec f11 = FieldSpec::gf(11);
    CHECK(f11.inv(f11.one()) == f11.one());
}

TEST_CASE("rational arithmetic basics") {
    const FieldSpec r = FieldSpec::real();
    CHECK(r.add(r.from_ratio(1, 3), r.from_ratio(1, 6)) == r.from_ratio(1, 2));
    CHECK(r.inv(r.from_ratio(-2, 3)) == r.from_ratio(-3, 2));
    CHECK(r.mul(r.from_ratio(2, 4), r.from_int(2)) == r.one());
}

TEST_CASE("division by zero is rejected") {
    const FieldSpec f7 = FieldSpec::gf(7);
    CHECK_THROWS_AS((void)f7.inv(f7.zero()), StructuralError);
    const FieldSpec r = FieldSpec::real();
    CHECK_THROWS_AS((void)r.inv(r.zero()), StructuralError);
    CHECK_THROWS_AS((void)r.from_ratio(1, 0), StructuralError);
}

TEST_CASE("field mismatch is a structural error") {
    const FieldSpec f7 = FieldSpec::gf(7);
    const FieldSpec r = FieldSpec::real();
    CHECK_THROWS_AS((void)f7.add(f7.one(), r.one()), StructuralError);
    CHECK_THROWS_AS((void)r.add(r.one(), f7.one()), StructuralError);
}

TEST_CASE("primality validation") {
    CHECK_THROWS_AS((void)FieldSpec::gf(1), StructuralError);
    CHECK_THROWS_AS((void)FieldSpec::gf(4), StructuralError);
    CHECK_THROWS_AS((void)FieldSpec::gf(561), StructuralError); // Carmichael number
    CHECK_NOTHROW((void)FieldSpec::gf(2));
    CHECK_NOTHROW((void)FieldSpec::gf(101));
    CHECK(is_prime_u64((1ull << 61) - 1));
    CHECK_FALSE(is_prime_u64(0));
    CHECK_FALSE(is_prime_u64(1));
}

TEST_CASE("field names parse and print") {
    CHECK(FieldSpec::parse("gf:11") == FieldSpec::gf(11));
    CHECK(FieldSpec::parse("real") == FieldSpec::real());
    CHECK(FieldSpec::gf(11).name() == "gf:11");
    CHECK_THROWS_AS((void)FieldSpec::parse("gf:"), StructuralError);
    CHECK_THROWS_AS((void)FieldSpec::parse("gf:x"), StructuralError);
    CHECK_THROWS_AS((void)FieldSpec::parse("complex"), StructuralError);
}

TEST_CASE("entry literals") {
    const FieldSpec f11 = FieldSpec::gf(11);
    CHECK(f11.parse_entry("-7") == f11.from_int(4));
    CHECK(f11.parse_entry("3/4") == f11.div(f11.from_int(3), f11.from_int(4)));
    CHECK_THROWS_AS((void)f11.parse_entry("1/11"), StructuralError); // denominator vanishes
    const FieldSpec r = FieldSpec::real();
    CHECK(r.parse_entry("-6/4") == r.from_ratio(-3, 2));
    CHECK_THROWS_AS((void)r.parse_entry("abc"), StructuralError);
}

TEST_CASE("field axioms hold on random triples") {
    for (std::uint64_t p : {2ull, 3ull, 7ull, 11ull, 101ull}) {
        const FieldSpec f = FieldSpec::gf(p);
        Rng rng(42 + p);
        for (int t = 0; t < 1000; ++t) {
            const FieldElement a = f.from_int(static_cast<long long>(rng.uniform_mod(p)));
            const FieldElement b = f.from_int(static_cast<long long>(rng.uniform_mod(p)));
            const FieldElement c = f.from_int(static_cast<long long>(rng.uniform_mod(p)));
            REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (!f.is_zero(a)) REQUIRE(f.mul(a, f.inv(a)) == f.one());
        }
    }
}

TEST_CASE("rationals stay in lowest terms") {
    const FieldSpec r = FieldSpec::real();
    Rng rng(7);
    FieldElement acc = r.from_ratio(3, 6);
    for (int t = 0; t < 200; ++t) {
        const long long num = static_cast<long long>(rng.uniform_mod(19)) - 9;
        const long long den = 1 + static_cast<long long>(rng.uniform_mod(12));
        acc = r.add(acc, r.from_ratio(num, den));
        acc = r.mul(acc, r.from_ratio(den, den + 1));
        const mpq_class& q = acc.rational_value();
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        REQUIRE(g == 1);
        REQUIRE(q.get_den() > 0);
    }
}
