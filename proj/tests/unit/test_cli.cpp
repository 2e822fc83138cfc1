#include <doctest.h>

#include <cmath>
#include <sstream>

#include "slspec/cli/run_spec.hpp"
#include "slspec/cli/runner.hpp"

using namespace slspec;
using namespace slspec::cli;

namespace {

const char* legendre_spectrum = "[problem]\nname=\"legendre\"\n[command]\nkind=\"spectrum\"\nbc=\"friedrichs\"\nwindow=[-0.5,25]\n";

SpecError spec_error(const std::string& text, const std::vector<std::string>& overrides = {}) {
    try {
        parse_spec(text, overrides);
    } catch (const SpecError& e) {
        return e;
    }
    FAIL("expected a SpecError");
    return SpecError("", 0, "");
}

std::vector<std::vector<std::string>> csv_rows(const std::string& csv) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("spectrum spec") {
    const RunSpec s = parse_spec(legendre_spectrum);
    CHECK(s.problem.name == "legendre");
    CHECK(s.command == CommandKind::spectrum);
    CHECK(s.bc == "friedrichs");
    REQUIRE(s.window);
    CHECK((*s.window)[0] == -0.5);
    CHECK((*s.window)[1] == 25.0);
    CHECK(s.tolerances == ToleranceSpec{});
}

TEST_CASE("comments, strings and nested arrays") {
    const RunSpec s = parse_spec(
        "# scan\n[problem]\nname = \"bessel\"  # order\ngamma = 0.25\n\n[command]\nkind = \"mscan\"\n"
        "z = [[0, 1], -1.5, [2e-1, 3]]\n[output]\npath = \"out \\\"dir\\\"/m.csv\"\n");
    CHECK(s.problem.params.at("gamma") == 0.25);
    REQUIRE(s.z.size() == 3);
    CHECK(s.z[0] == cplx(0.0, 1.0));
    CHECK(s.z[1] == cplx(-1.5, 0.0));
    CHECK(s.z[2] == cplx(0.2, 3.0));
    CHECK(s.output == "out \"dir\"/m.csv");
}

TEST_CASE("syntax errors carry line numbers") {
    CHECK(spec_error("[problem]\nname=\"legendre\"\nwindow [1,2]\n").line() == 3);
    CHECK(spec_error("[problem\n").line() == 1);
    CHECK(spec_error("name=\"legendre\"\n").line() == 1);
    CHECK(spec_error("[problem]\nname=\"legendre\n").line() == 2);
    CHECK(spec_error("[problem]\nname=\"a\"\nname=\"b\"\n").line() == 3);
    CHECK(spec_error("[command]\nwindow=[1,2\n").line() == 2);
    const SpecError e = spec_error("[problem]\n\nname = legendre\n");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
}

TEST_CASE("semantic errors carry key paths") {
    CHECK(spec_error("[problem]\nname=\"legendre\"\n[command]\nkind=\"spectrum\"\n").key_path() == "command.window");
    CHECK(spec_error("[problem]\nname=\"laguerre\"\nbeta=2.5\n[command]\nkind=\"spectrum\"\nwindow=[0,1]\n")
              .key_path() == "problem.beta");
    CHECK(spec_error("[problem]\nname=\"legendre\"\ncolour=1\n[command]\nkind=\"spectrum\"\nwindow=[0,1]\n")
              .key_path() == "problem.colour");
    CHECK(spec_error(std::string(legendre_spectrum) + "[extra]\nx=1\n").key_path() == "extra");
    CHECK(spec_error(std::string(legendre_spectrum) + "[tolerances]\nrel_tol=-1\n").key_path() ==
          "tolerances.rel_tol");
    CHECK(spec_error("[problem]\nname=\"legendre\"\n[command]\nkind=\"spectrum\"\nwindow=[3,1]\n").key_path() ==
          "command.window");
    CHECK(spec_error("[problem]\nname=\"bessel\"\n[command]\nkind=\"mscan\"\nz=[0,1]\n").key_path() ==
          "problem.gamma");
    CHECK(spec_error("[problem]\nname=\"legendre\"\n[command]\nkind=\"classify\"\n").key_path() ==
          "command.endpoint");
    CHECK(spec_error("[problem]\nname=\"legendre\"\n[command]\nkind=\"plot\"\n").key_path() == "command.kind");
}

TEST_CASE("overrides") {
    const RunSpec s = parse_spec(legendre_spectrum, {"command.window=[0, 7]", "tolerances.panels=50"});
    CHECK((*s.window)[1] == 7.0);
    CHECK(s.tolerances.panels == 50);
    CHECK(spec_error(legendre_spectrum, {"window=[0,1]"}).key_path() == "window");
    CHECK(spec_error(legendre_spectrum, {"command.colour=1"}).key_path() == "command.colour");
    const RunSpec bare = parse_spec(legendre_spectrum, {"command.kind=mscan", "command.z=[0, 1]"});
    CHECK(bare.command == CommandKind::mscan);
    CHECK(parse_spec(legendre_spectrum, {"command.kind=\"mscan\"", "command.z=[0, 1]"}) == bare);
    CHECK(spec_error(legendre_spectrum, {"command.kind=true"}).key_path() == "command.kind");
}

TEST_CASE("numbers render with 17 significant digits") {
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(2.0) == "2");
    CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("legendre spectrum run") {
    const RunOutcome out = run(parse_spec(legendre_spectrum));
    REQUIRE(out.exit_code == exit_ok);
    const auto rows = csv_rows(out.csv);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"index", "lambda", "residual", "exact_if_known", "abs_err"});
    const double exact[] = {0, 2, 6, 12, 20};
    for (int k = 0; k < 5; ++k) {
        CHECK(std::stod(rows[k + 1][3]) == exact[k]);
        CHECK(std::abs(std::stod(rows[k + 1][1]) - exact[k]) < 1e-6);
    }
}

TEST_CASE("bessel mscan run") {
    const RunOutcome out =
        run(parse_spec("[problem]\nname=\"bessel\"\ngamma=0.5\n[command]\nkind=\"mscan\"\nz=[[0,1]]\n"));
    REQUIRE(out.exit_code == exit_ok);
    const auto rows = csv_rows(out.csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"re_z", "im_z", "re_m", "im_m", "re_m_exact", "im_m_exact"});
    const cplx exact(std::stod(rows[1][4]), std::stod(rows[1][5]));
    CHECK(std::abs(exact - std::exp(cplx(0.0, 0.75 * M_PI))) < 1e-14);
    const cplx m(std::stod(rows[1][2]), std::stod(rows[1][3]));
    CHECK(std::abs(m - exact) < 1e-8);
}

TEST_CASE("classify run") {
    const RunOutcome out = run(
        parse_spec("[problem]\nname=\"bessel\"\ngamma=1.3\n[command]\nkind=\"classify\"\nendpoint=\"left\"\n"));
    REQUIRE(out.exit_code == exit_ok);
    const auto rows = csv_rows(out.csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][0] == "left");
    CHECK(rows[1][1] == "LimitPoint");
}

TEST_CASE("bvals run") {
    const RunOutcome out =
        run(parse_spec("[problem]\nname=\"legendre\"\n[command]\nkind=\"bvals\"\nendpoint=\"right\"\n"));
    REQUIRE(out.exit_code == exit_ok);
    const auto rows = csv_rows(out.csv);
    REQUIRE(rows.size() == 6);
    CHECK(rows[1][0] == "u");
    CHECK(rows[2][0] == "uhat");
    CHECK(std::abs(std::stod(rows[2][1]) - 1.0) < 1e-8);
    CHECK(rows[4][0] == "eig0");
}

TEST_CASE("failures map to exit codes") {
    // b is limit circle for legendre, so a separated condition needs beta
    const RunOutcome missing = run(parse_spec(
        "[problem]\nname=\"legendre\"\n[command]\nkind=\"spectrum\"\nbc=\"separated\"\nalpha=0\nwindow=[0,3]\n"));
    CHECK(missing.exit_code == exit_spec_error);
    const RunOutcome lp =
        run(parse_spec("[problem]\nname=\"bessel\"\ngamma=0.5\n[command]\nkind=\"bvals\"\nendpoint=\"right\"\n"));
    CHECK(lp.exit_code == exit_spec_error);
    // m has a pole at the eigenvalue 2
    const RunOutcome edge = run(parse_spec(
        "[problem]\nname=\"legendre\"\n[command]\nkind=\"mscan\"\nz=[2]\n"));
    CHECK(edge.exit_code == exit_numerical_failure);
    CHECK(edge.csv.empty());
    CHECK_FALSE(edge.message.empty());
}
