#include "doctest.h"
#include "parab/field.hpp"
#include "parab/suites.hpp"

using namespace parab;

TEST_CASE("every suite passes at reduced size") {
    SuiteOptions o;
    o.instances = 4;
    o.algebra_instances = 10;
    o.sweep_primes = {3, 5};
    o.seed = 7;
    for (const auto& s : suites()) {
        CAPTURE(s.name);
        SuiteResult r = s.run(o);
        CHECK(r.cases > 0);
        for (const auto& msg : r.failures) FAIL_CHECK(msg);
    }
}

TEST_CASE("suites are deterministic in the seed") {
    SuiteOptions o;
    o.instances = 3;
    o.algebra_instances = 5;
    SuiteResult a = run_suite("serialize", o), b = run_suite("serialize", o);
    CHECK(a.cases == b.cases);
    CHECK(a.notes == b.notes);
    CHECK_THROWS_AS(run_suite("nope", o), ValidationError);
}
