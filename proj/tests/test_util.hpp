#pragma once

#include "dks/error.hpp"
#include "dks/fock.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace dks::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234abcdULL);
    return gen;
}

inline double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline cplx random_complex(double max_abs) {
    const double r = max_abs * std::sqrt(uniform(0.0, 1.0));
    const double t = uniform(-M_PI, M_PI);
    return std::polar(r, t);
}

inline FockState random_state(int dim) {
    std::normal_distribution<double> g;
    std::vector<cplx> c(static_cast<std::size_t>(dim));
    for (auto& v : c)
        v = {g(rng()), g(rng())};
    return FockState::from_unnormalized(c);
}

inline double db(double f) { return 10.0 * std::log10(f); }

} // namespace dks::testing

#define EXPECT_DKS_ERROR(stmt, expected)                                   \
    do {                                                                   \
        try {                                                              \
            stmt;                                                          \
            ADD_FAILURE() << "expected " << dks::to_string(expected);      \
        } catch (const dks::Error& e) {                                    \
            EXPECT_EQ(e.code(), expected) << e.what();                     \
        }                                                                  \
    } while (0)

#define EXPECT_REL_NEAR(actual, expected, rel)                                          \
    EXPECT_NEAR(actual, expected, std::abs(static_cast<double>(expected)) * (rel))
