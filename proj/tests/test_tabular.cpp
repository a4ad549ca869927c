#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "statcalc/tabular.hpp"

using namespace statcalc;
using Catch::Matchers::WithinAbs;

namespace {

TabularFunction load_text(const std::string& text) {
    std::istringstream in(text);
    return load_csv(in, "inline");
}

TabularFunction load_fixture() {
    std::ifstream in(STATCALC_DATA_DIR "/fredericksburg.csv");
    REQUIRE(in);
    return load_csv(in, "fredericksburg");
}

DataError data_error_of(const std::string& text) {
    try {
        load_text(text);
    } catch (const DataError& e) {
        return e;
    }
    FAIL("expected DataError");
    throw;
}

}  // namespace

TEST_CASE("fixture loads with 60 years", "[tabular]") {
    auto tf = load_fixture();
    CHECK(tf.size() == 60);
    CHECK(tf.min_x() == 1951.0);
    CHECK(tf.max_x() == 2010.0);
    CHECK(tf.x_name() == "year");
    CHECK(tf.y_name() == "temperature_c");
    // spot checks against the printed table
    CHECK(interpolate(tf, 1953) == 14.4);
    CHECK(interpolate(tf, 1998) == 14.7);
    CHECK(interpolate(tf, 2010) == 14.2);
}

TEST_CASE("fixture mean is 13.2 to one decimal", "[tabular]") {
    auto m = tabular_mean(load_fixture());
    CHECK(m.n == 60);
    CHECK_THAT(m.mean, WithinAbs(13.2, 0.05));
    // exact decimal sum of the 60 values is 790.2
    CHECK_THAT(m.mean, WithinAbs(13.17, 1e-12));
}

TEST_CASE("fixture integral over the data span", "[tabular]") {
    auto r = tabular_integral(load_fixture());
    CHECK(r.interval == Interval(1951, 2010));
    CHECK_THAT(r.value, WithinAbs(59 * 13.2, 59 * 0.05));
    CHECK(r.value == 59.0 * r.mean.mean);
}

TEST_CASE("csv parsing", "[tabular]") {
    SECTION("header detection") {
        auto with = load_text("t,s\n0,1\n1,2\n");
        CHECK(with.x_name() == "t");
        CHECK(with.size() == 2);
        auto without = load_text("0,1\n1,2\n");
        CHECK(without.x_name() == "x");
        CHECK(without.size() == 2);
    }
    SECTION("whitespace, CRLF, blank lines, plus signs and BOM") {
        auto tf = load_text("\xEF\xBB\xBFx , y\r\n\r\n 2 , +4 \r\n1,1e0\r\n");
        CHECK(tf.abscissae() == std::vector<double>{1, 2});
        CHECK(tf.ordinates() == std::vector<double>{1, 4});
    }
    SECTION("duplicate abscissa reported at its line") {
        auto e = data_error_of("x,y\n1,2\n1,3");
        CHECK(e.line() == 3);
    }
    SECTION("malformed rows") {
        CHECK(data_error_of("x,y\n1,2\n3\n").line() == 3);
        CHECK(data_error_of("x,y\n1,2\n3,4,5\n").line() == 3);
        CHECK(data_error_of("x,y\n1,2\nthree,4\n").line() == 3);
        CHECK(data_error_of("1,2\nx,y\n").line() == 2);
        CHECK(data_error_of("x,y\n1,nan\n").line() == 2);
    }
    SECTION("no data rows") {
        CHECK_THROWS_AS(load_text(""), DataError);
        CHECK_THROWS_AS(load_text("x,y\n"), DataError);
    }
    SECTION("single row supports the mean but not interpolation") {
        auto tf = load_text("5,7");
        CHECK(tabular_mean(tf).mean == 7.0);
        CHECK_THROWS_AS(interpolate(tf, 5.0), std::invalid_argument);
        CHECK_THROWS_AS(tabular_integral(tf), std::invalid_argument);
    }
}

TEST_CASE("tabular mean examples", "[tabular]") {
    CHECK(tabular_mean(TabularFunction({{0, 1}, {1, 2}, {2, 6}})).mean == 3.0);
    auto flat = tabular_mean(TabularFunction({{0, 4.5}, {3, 4.5}, {7, 4.5}}));
    CHECK(flat.mean == 4.5);
    CHECK(flat.std_error == 0.0);
    // spacing weights 0.5, 1.5, 1: (1*0.5 + 2*1.5 + 6*1) / 3
    CHECK_THAT(tabular_mean(TabularFunction({{0, 1}, {1, 2}, {3, 6}}), {true}).mean,
               WithinAbs(9.5 / 3.0, 1e-15));
}

TEST_CASE("interpolation", "[tabular]") {
    TabularFunction chord({{0, 0}, {2, 4}});
    CHECK(interpolate(chord, 1.0) == 2.0);
    TabularFunction parabola({{0, 0}, {1, 1}, {2, 4}});
    CHECK(interpolate(parabola, 1.5) == 2.5);
    for (double x : {0.0, 1.0, 2.0}) CHECK(interpolate(parabola, x) == x * x);
    CHECK_THROWS_AS(interpolate(parabola, -0.01), EvalError);
    CHECK_THROWS_AS(interpolate(parabola, 2.01), EvalError);
}

TEST_CASE("interpolation is monotone between nodes and exact at nodes", "[tabular][property]") {
    auto tf = load_fixture();
    const auto& xs = tf.abscissae();
    const auto& ys = tf.ordinates();
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        CHECK(interpolate(tf, xs[i]) == ys[i]);
        double prev = ys[i];
        for (int k = 1; k <= 16; ++k) {
            double v = interpolate(tf, xs[i] + (xs[i + 1] - xs[i]) * k / 16.0);
            if (ys[i + 1] >= ys[i])
                CHECK(v >= prev);
            else
                CHECK(v <= prev);
            prev = v;
        }
    }
}

TEST_CASE("mean does not depend on row order", "[tabular][property]") {
    auto tf = load_fixture();
    std::vector<std::pair<double, double>> rows;
    for (std::size_t i = 0; i < tf.size(); ++i) rows.emplace_back(tf.abscissae()[i], tf.ordinates()[i]);
    std::mt19937_64 gen(3);
    for (int round = 0; round < 20; ++round) {
        std::shuffle(rows.begin(), rows.end(), gen);
        std::ostringstream csv;
        for (const auto& [x, y] : rows) csv << x << ',' << y << '\n';
        CHECK(tabular_mean(load_text(csv.str())).mean == tabular_mean(tf).mean);
    }
}

TEST_CASE("write_csv round-trips to 17 digits", "[tabular][property]") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    std::vector<std::pair<double, double>> rows;
    for (int i = 0; i < 200; ++i) rows.emplace_back(dist(gen), dist(gen) * 1e-9);
    TabularFunction original(rows, "random", "a", "b");
    std::ostringstream out;
    write_csv(original, out);
    auto back = load_text(out.str());
    CHECK(back.abscissae() == original.abscissae());
    CHECK(back.ordinates() == original.ordinates());
    CHECK(back.x_name() == "a");

    std::ostringstream again;
    write_csv(load_fixture(), again);
    CHECK(load_text(again.str()).ordinates() == load_fixture().ordinates());
}

TEST_CASE("tabular functions plug into FunctionHandle", "[tabular]") {
    auto f = as_function(TabularFunction({{0, 0}, {1, 1}, {2, 4}}, "parabola"));
    CHECK(f.label() == "parabola");
    CHECK(f(1.5) == 2.5);
    try {
        f(3.0);
        FAIL("expected EvalError");
    } catch (const EvalError& e) {
        CHECK(e.kind() == EvalErrorKind::Domain);
        CHECK(e.input() == 3.0);
    }
}
