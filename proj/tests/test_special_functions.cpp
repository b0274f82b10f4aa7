#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tunebench/special_functions.hpp"

using namespace tunebench;

// Reference values computed with an independent statistics package.

TEST_CASE("chi-squared survival function") {
    CHECK(chi_squared_sf(10.0, 2) == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
    CHECK(chi_squared_sf(3.5, 4) == doctest::Approx(0.477878344488724).epsilon(1e-10));
    CHECK(chi_squared_sf(15.2, 7) == doctest::Approx(0.033519466614424016).epsilon(1e-10));
    CHECK(chi_squared_sf(1.0, 1) == doctest::Approx(0.31731050786291115).epsilon(1e-10));
    CHECK(chi_squared_sf(250.0, 199) == doctest::Approx(0.008230113044724758).epsilon(1e-9));
    CHECK(chi_squared_sf(0.3, 9) == doctest::Approx(0.9999966858902002).epsilon(1e-10));
    CHECK(chi_squared_sf(0.0, 3) == 1.0);
    CHECK(chi_squared_sf(-1.0, 3) == 1.0);
    CHECK_THROWS(chi_squared_sf(1.0, 0));
}

TEST_CASE("student t quantile") {
    CHECK(students_t_quantile(0.975, 8) == doctest::Approx(2.306004135204166).epsilon(1e-9));
    CHECK(students_t_quantile(0.975, 2) == doctest::Approx(4.302652729696142).epsilon(1e-9));
    CHECK(students_t_quantile(0.995, 30) == doctest::Approx(2.7499956535670305).epsilon(1e-9));
    CHECK(students_t_quantile(0.975, 796) == doctest::Approx(1.9629486844392174).epsilon(1e-9));
    CHECK(students_t_quantile(0.9, 1) == doctest::Approx(3.0776835372078066).epsilon(1e-9));
    CHECK(students_t_quantile(0.2, 5) == doctest::Approx(-0.9195437802363253).epsilon(1e-9));
    CHECK(students_t_quantile(0.5, 10) == 0.0);
    CHECK_THROWS(students_t_quantile(0.0, 5));
    CHECK_THROWS(students_t_quantile(0.975, 0));
}

TEST_CASE("incomplete gamma and beta behave at the edges") {
    CHECK(gamma_p(2.0, 0.0) == 0.0);
    CHECK(gamma_q(2.0, 0.0) == 1.0);
    CHECK(gamma_p(3.0, 1e3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    // symmetry: I_x(a,b) = 1 - I_{1-x}(b,a)
    for (double x : {0.1, 0.37, 0.5, 0.81}) {
        CHECK(incomplete_beta(2.5, 4.0, x) ==
              doctest::Approx(1.0 - incomplete_beta(4.0, 2.5, 1.0 - x)).epsilon(1e-12));
    }
}
