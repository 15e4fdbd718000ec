#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "core/wireless.hpp"

using namespace craft;

TEST_CASE("mean_interference is exactly zero while users fit the access points") {
  const double p = 0.1, h = 1e-5;
  CHECK(mean_interference(0, 1, p, h) == 0.0);
  CHECK(mean_interference(1, 1, p, h) == 0.0);
  CHECK(mean_interference(3, 3, p, h) == 0.0);
  CHECK(mean_interference(4, 5, p, h) == 0.0);
  CHECK(mean_interference(10, 10, p, h) == 0.0);
}

TEST_CASE("mean_interference grows with the overload ratio") {
  const double p = 0.1, h = 1e-5;
  // n/ac = 2 -> (2 - 1) * p * h
  CHECK(mean_interference(2, 1, p, h) == doctest::Approx(p * h).epsilon(1e-12));
  // n/ac = 1.5 -> 0.5 * p * h
  CHECK(mean_interference(3, 2, p, h) == doctest::Approx(0.5 * p * h).epsilon(1e-12));
  CHECK(mean_interference(5, 2, p, h) == doctest::Approx(1.5 * p * h).epsilon(1e-12));
}

TEST_CASE("mean_interference validates its domain") {
  CHECK_THROWS_AS(mean_interference(1, 0, 0.1, 1e-5), std::domain_error);
  CHECK_THROWS_AS(mean_interference(-1, 1, 0.1, 1e-5), std::domain_error);
}

TEST_CASE("sinr matches the closed form") {
  // p * h / sigma2 with no interference.
  CHECK(sinr(0.1, 1e-5, 1e-13, 0.0) == doctest::Approx(1e7).epsilon(1e-12));
  // Equal noise and interference halves it.
  CHECK(sinr(0.1, 1e-5, 1e-13, 1e-13) == doctest::Approx(5e6).epsilon(1e-12));
  // Constructed to hit exactly 1: p = 1 makes p*h bitwise equal to sigma2.
  CHECK(sinr(1.0, 1e-6, 1e-6, 0.0) == 1.0);
}

TEST_CASE("sinr validates its domain") {
  CHECK_THROWS_AS(sinr(0.1, 1e-5, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(sinr(0.1, 1e-5, -1e-13, 0.0), std::domain_error);
  CHECK_THROWS_AS(sinr(0.1, 1e-5, 1e-13, -1.0), std::domain_error);
}

TEST_CASE("wireless_bitrate at sinr 1 equals the bandwidth exactly") {
  // W * log2(1 + 1) = W; log2(2) == 1.0 in floating point.
  CHECK(wireless_bitrate(10e6, 1.0) == 10e6);
  CHECK(wireless_bitrate(1.0, 1.0) == 1.0);
  CHECK(wireless_bitrate(123.5e6, 1.0) == 123.5e6);
}

TEST_CASE("wireless_bitrate matches hand values") {
  CHECK(wireless_bitrate(10e6, 3.0) == doctest::Approx(20e6).epsilon(1e-12));  // log2(4) = 2
  CHECK(wireless_bitrate(5e6, 7.0) == doctest::Approx(15e6).epsilon(1e-12));   // log2(8) = 3
  CHECK(wireless_bitrate(10e6, 0.0) == 0.0);
}

TEST_CASE("wireless_bitrate validates its domain") {
  CHECK_THROWS_AS(wireless_bitrate(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(wireless_bitrate(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(wireless_bitrate(10e6, -0.5), std::domain_error);
}

TEST_CASE("table parameters give the expected uplink rate") {
  // W = 10 MHz, p = 0.1 W, h = 1e-5, sigma2 = 1e-13 W, interference-free:
  // sinr = 1e7, rate = 1e7 * log2(1 + 1e7) ~ 232.5 Mbit/s.
  const double s = sinr(0.1, 1e-5, 1e-13, 0.0);
  const double rate = wireless_bitrate(10e6, s);
  CHECK(rate == doctest::Approx(10e6 * std::log2(1.0 + 1e7)).epsilon(1e-12));
  CHECK(rate > 232e6);
  CHECK(rate < 233e6);
}
