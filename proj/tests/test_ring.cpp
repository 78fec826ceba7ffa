#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "tcount/ring.hpp"
#include "tcount/wire.hpp"

using namespace tcount;

namespace {

RingReal random_ring(std::mt19937& rng, int coeff_range = 20, unsigned max_k = 6) {
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<unsigned> kd(0, max_k);
    return RingReal(coeff(rng), coeff(rng), kd(rng));
}

CycloElem random_cyclo(std::mt19937& rng, int coeff_range = 12, unsigned max_k = 5) {
    std::uniform_int_distribution<int> coeff(-coeff_range, coeff_range);
    std::uniform_int_distribution<unsigned> kd(0, max_k);
    return CycloElem(coeff(rng), coeff(rng), coeff(rng), coeff(rng), kd(rng));
}

}  // namespace

TEST_CASE("canonical form invariants") {
    // k == 0 or a odd; zero is unique
    RingReal v(4, 6, 3);  // (4 + 6 sqrt2)/sqrt2^3
    CHECK((v.k() == 0 || (v.a() % 2 != 0)));
    CHECK(RingReal(0, 0, 5) == RingReal::zero());
    CHECK(RingReal(0, 0, 5).k() == 0);

    // canonicalization is idempotent by construction
    RingReal w(v.a(), v.b(), v.k());
    CHECK(w == v);
}

TEST_CASE("addition examples") {
    // 1/sqrt2 + 1/sqrt2 = sqrt2
    CHECK(RingReal(1, 0, 1) + RingReal(1, 0, 1) == RingReal(0, 1, 0));
    // additive identity
    RingReal x(3, -2, 4);
    CHECK(x + RingReal::zero() == x);
    // 1/2 + 1/2 = 1
    CHECK(RingReal(1, 0, 2) + RingReal(1, 0, 2) == RingReal::one());
}

TEST_CASE("multiplication examples") {
    // 1/sqrt2 * 1/sqrt2 = 1/2
    CHECK(RingReal(1, 0, 1) * RingReal(1, 0, 1) == RingReal(1, 0, 2));
    // multiplicative identity
    RingReal x(5, 3, 2);
    CHECK(x * RingReal::one() == x);
    // sqrt2 * sqrt2 = 2
    CHECK(RingReal::sqrt2() * RingReal::sqrt2() == RingReal(2, 0, 0));
}

TEST_CASE("sde examples") {
    CHECK(RingReal::zero().sde() == 0);
    CHECK(RingReal(1, 0, 1).sde() == 1);  // 1/sqrt2
    CHECK(RingReal(1, 0, 2).sde() == 2);  // 1/2
}

TEST_CASE("sde of (q +- r)/sqrt2 when sde(q) > sde(r)") {
    std::mt19937 rng(7001);
    const RingReal inv_sqrt2 = RingReal::inv_sqrt2();
    int tested = 0;
    while (tested < 10000) {
        RingReal q = random_ring(rng);
        RingReal r = random_ring(rng);
        if (q.sde() <= r.sde()) continue;
        ++tested;
        RingReal sum = (q + r) * inv_sqrt2;
        RingReal diff = (q - r) * inv_sqrt2;
        CHECK(sum.sde() == q.sde() + 1);
        CHECK(diff.sde() == q.sde() + 1);
    }
}

TEST_CASE("ring maps to floating point homomorphically") {
    std::mt19937 rng(7002);
    for (int i = 0; i < 2000; ++i) {
        RingReal x = random_ring(rng);
        RingReal y = random_ring(rng);
        CHECK(std::abs((x + y).to_double() - (x.to_double() + y.to_double())) < 1e-9);
        CHECK(std::abs((x * y).to_double() - (x.to_double() * y.to_double())) < 1e-9);
        CHECK(std::abs((-x).to_double() + x.to_double()) < 1e-12);
    }
}

TEST_CASE("total order is strict and shift-consistent") {
    std::mt19937 rng(7003);
    for (int i = 0; i < 2000; ++i) {
        RingReal x = random_ring(rng);
        RingReal y = random_ring(rng);
        RingReal z = random_ring(rng);
        CHECK_FALSE(ring_less(x, x));
        if (ring_less(x, y)) CHECK_FALSE(ring_less(y, x));
        if (x != y) CHECK((ring_less(x, y) || ring_less(y, x)));
        // transitivity spot-check
        if (ring_less(x, y) && ring_less(y, z)) CHECK(ring_less(x, z));
    }
}

TEST_CASE("overflow is a hard error") {
    // just above half the maximum of the active integer width
    const Int half_max = Int(1) << (sizeof(Int) * 8 - 2);
    RingReal big(half_max + 1, 0, 0);
    CHECK_THROWS_AS(big + big, std::overflow_error);
    CHECK_THROWS_AS(big * RingReal(4, 0, 0), std::overflow_error);
}

TEST_CASE("cyclotomic powers of omega") {
    CycloElem omega = CycloElem::omega_power(1);
    CycloElem omega3 = CycloElem::omega_power(3);
    // omega * omega^3 = omega^4 = -1
    CHECK(omega * omega3 == CycloElem(-1, 0, 0, 0, 0));
    // (omega - omega^3)^2 = 2
    CycloElem sqrt2 = omega - omega3;
    CHECK(sqrt2 * sqrt2 == CycloElem(2, 0, 0, 0, 0));
    // conj(omega) * omega = 1
    CHECK(omega.conj() * omega == CycloElem::one());
}

TEST_CASE("cyclotomic canonical reduction") {
    // sqrt2 / sqrt2 = 1
    CHECK(CycloElem(0, 1, 0, -1, 1) == CycloElem::one());
    // 1/sqrt2 stays put (a + c odd)
    CHECK(CycloElem(1, 0, 0, 0, 1).k() == 1);
    // 2 / sqrt2^2 = 1
    CHECK(CycloElem(2, 0, 0, 0, 2) == CycloElem::one());
}

TEST_CASE("real and imaginary parts") {
    std::mt19937 rng(7004);
    for (int i = 0; i < 2000; ++i) {
        CycloElem x = random_cyclo(rng);
        RingReal re = x.real_part();
        RingReal im = x.imag_part();
        // x = re + i * im as an exact CycloElem identity (i = omega^2)
        CycloElem rebuilt = CycloElem::from_ring_real(re) +
                            CycloElem::omega_power(2) * CycloElem::from_ring_real(im);
        CHECK(rebuilt == x);
        CHECK(x.is_real() == im.is_zero());
    }
}

TEST_CASE("cyclotomic arithmetic matches complex floats") {
    std::mt19937 rng(7005);
    for (int i = 0; i < 2000; ++i) {
        CycloElem x = random_cyclo(rng);
        CycloElem y = random_cyclo(rng);
        CycloElem p = x * y;
        double xr = x.real_to_double(), xi = x.imag_to_double();
        double yr = y.real_to_double(), yi = y.imag_to_double();
        CHECK(std::abs(p.real_to_double() - (xr * yr - xi * yi)) < 1e-7);
        CHECK(std::abs(p.imag_to_double() - (xr * yi + xi * yr)) < 1e-7);
        CHECK(std::abs(x.conj().imag_to_double() + xi) < 1e-9);
    }
}

TEST_CASE("text rendering") {
    CHECK(RingReal(-3, 2, 4).to_string() == "-3,2,4");
    CHECK(CycloElem(1, -2, 0, 7, 3).to_string() == "1,-2,0,7,3");
}

TEST_CASE("binary encoding is bit-exact") {
    std::mt19937 rng(7006);
    for (int i = 0; i < 500; ++i) {
        RingReal x = random_ring(rng);
        std::vector<std::uint8_t> bytes;
        append_ring_real(bytes, x);
        REQUIRE(bytes.size() == 18);
        // little-endian two's-complement 64-bit a then b, then u16 k
        WireReader in(bytes.data(), bytes.size());
        CHECK(in.ring_real() == x);
    }
    std::vector<std::uint8_t> bytes;
    append_ring_real(bytes, RingReal(-1, 0, 1));
    CHECK(bytes[0] == 0xff);  // low byte of -1
    CHECK(bytes[7] == 0xff);
    CHECK(bytes[16] == 1);  // k low byte
    CHECK(bytes[17] == 0);
}
