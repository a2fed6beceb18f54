#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "qcs/io.hpp"

using namespace qcs;

TEST_CASE("number formatting round-trips exactly") {
    for (const double v : {0.0, 1.0, -2.5, 0.1, 1.0 / 3.0, 6.6509295031824921, 1e300, 5e-324,
                           -3.141592653589793}) {
        CHECK(parse_number(format_number(v)) == v);
    }
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(-0.5) == "-0.5");
    CHECK(format_number(6.65, 3) == "6.65");
}

TEST_CASE("parse_number rejects malformed fields") {
    CHECK_THROWS_AS(parse_number(""), invalid_argument);
    CHECK_THROWS_AS(parse_number("1.2x"), invalid_argument);
    CHECK_THROWS_AS(parse_number("abc"), invalid_argument);
    CHECK_THROWS_AS(parse_number("1.2 "), invalid_argument);
    CHECK(parse_number("-4.25e-3") == -4.25e-3);
}

TEST_CASE("csv writes header plus rows with newline endings") {
    ScanResult scan;
    scan.column_names = {"t", "a", "b"};
    scan.rows = {{0.0, {1.0, 2.0}}, {0.5, {-1.25, 1e-3}}};
    std::ostringstream out;
    write_csv(scan, out);
    CHECK(out.str() == "t,a,b\n0,1,2\n0.5,-1.25,0.001\n");
}

TEST_CASE("csv round-trips bit-exactly") {
    ScanResult scan;
    scan.column_names = {"t", "x"};
    scan.rows = {{0.1, {1.0 / 3.0}}, {0.2, {-7.25e-9}}, {0.30000000000000004, {1e308}}};
    std::ostringstream out;
    write_csv(scan, out);
    std::istringstream in(out.str());
    const auto back = read_csv(in);
    REQUIRE(back.column_names == scan.column_names);
    REQUIRE(back.rows.size() == scan.rows.size());
    for (std::size_t i = 0; i < scan.rows.size(); ++i) {
        CHECK(back.rows[i].t == scan.rows[i].t);
        CHECK(back.rows[i].values == scan.rows[i].values);
    }
}

TEST_CASE("csv parsing validates structure") {
    std::istringstream empty("");
    CHECK_THROWS_AS(read_csv(empty), invalid_argument);

    std::istringstream ragged("t,x\n1,2\n3\n");
    CHECK_THROWS_AS(read_csv(ragged), invalid_argument);

    std::istringstream bad_field("t,x\n1,oops\n");
    CHECK_THROWS_AS(read_csv(bad_field), invalid_argument);

    std::istringstream header_only("t,x\n");
    const auto scan = read_csv(header_only);
    CHECK(scan.column_names.size() == 2);
    CHECK(scan.rows.empty());
}
