#pragma once

#include "mqc/graded_poly.hpp"
#include "mqc/random.hpp"
#include "mqc/series.hpp"

#include <doctest.h>

namespace doctest {

template <>
struct StringMaker<mqc::GradedPoly> {
    static String convert(const mqc::GradedPoly& p) { return p.str().c_str(); }
};

template <>
struct StringMaker<mqc::Series> {
    static String convert(const mqc::Series& s) { return s.str().c_str(); }
};

template <>
struct StringMaker<mqc::Rational> {
    static String convert(const mqc::Rational& r) { return r.str().c_str(); }
};

} // namespace doctest

namespace test {

using mqc::Rng;
using mqc::random_poly;

} // namespace test
