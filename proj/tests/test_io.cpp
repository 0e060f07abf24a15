// Round-trip number formatting, raw file IO, dense CSV fields with
// position-accurate errors, snapshot layout, and manifest writing.
#include "doctest.h"

#include <string>

#include "core/error.hpp"
#include "core/grid.hpp"
#include "core/io.hpp"
#include "test_helpers.hpp"

using namespace mfc;
using doctest::Contains;
using mfc::testing::TempDir;

TEST_SUITE("io") {
    TEST_CASE("format_double emits shortest round-tripping strings") {
        CHECK(format_double(0.5) == "0.5");
        CHECK(format_double(50.0) == "50");
        CHECK(format_double(0.25) == "0.25");
        CHECK(format_double(0.0) == "0");
        CHECK(format_double(-3.0) == "-3");
        for (double v : {0.1, 1.0 / 3.0, 4.0, 1e-300, -2.5e-7, 3.141592653589793,
                         12345.6789}) {
            CAPTURE(v);
            CHECK(std::stod(format_double(v)) == v);
        }
    }

    TEST_CASE("text files round-trip bytes") {
        TempDir dir("io_text");
        const std::string content = "line one\nline two\r\n# not a comment\n\ttab";
        const std::string path = dir.file("note.txt", "");
        write_text_file(path, content);
        CHECK(read_text_file(path) == content);

        CHECK_THROWS_WITH_AS(read_text_file((dir.path / "absent.txt").string()),
                             Contains("cannot open file"), IoError);
        CHECK_THROWS_WITH_AS(
            write_text_file((dir.path / "no_such_dir" / "f.txt").string(), "x"),
            Contains("cannot write file"), IoError);
    }

    TEST_CASE("dense field CSV") {
        const Grid2D g = Grid2D::periodic(3, 2, 0.5);
        TempDir dir("io_csv");

        SUBCASE("values land at (column, row)") {
            const ScalarField f =
                read_field_csv(dir.file("f.csv", "1,2,3\n4,5,6\n"), g);
            CHECK(f[g.index(0, 0)] == 1.0);
            CHECK(f[g.index(2, 0)] == 3.0);
            CHECK(f[g.index(0, 1)] == 4.0);
            CHECK(f[g.index(2, 1)] == 6.0);
        }

        SUBCASE("carriage returns, blank lines, and padding are tolerated") {
            const ScalarField f = read_field_csv(
                dir.file("crlf.csv", "1, 2 ,3\r\n\r\n4,5,  6\r\n"), g);
            CHECK(f[g.index(1, 0)] == 2.0);
            CHECK(f[g.index(2, 1)] == 6.0);
        }

        SUBCASE("shape and number errors name the position") {
            CHECK_THROWS_WITH_AS(
                read_field_csv(dir.file("r3.csv", "1,2,3\n4,5,6\n7,8,9\n"), g),
                Contains("has more than 2 rows"), ParseError);
            CHECK_THROWS_WITH_AS(
                read_field_csv(dir.file("c4.csv", "1,2,3,4\n4,5,6\n"), g),
                Contains("row 0 has more than 3 columns"), ParseError);
            CHECK_THROWS_WITH_AS(
                read_field_csv(dir.file("c2.csv", "1,2\n4,5,6\n"), g),
                Contains("row 0 has 2 columns, expected 3"), ParseError);
            CHECK_THROWS_WITH_AS(
                read_field_csv(dir.file("bad.csv", "1,2,3\n4,5,x\n"), g),
                Contains("row 1 column 2 is not a number: 'x'"), ParseError);
            CHECK_THROWS_WITH_AS(read_field_csv(dir.file("r1.csv", "1,2,3\n"), g),
                                 Contains("has 1 rows, expected 2"), ParseError);
            CHECK_THROWS_WITH_AS(read_field_csv((dir.path / "none.csv").string(), g),
                                 Contains("cannot open field file"), IoError);
        }
    }

    TEST_CASE("snapshots list free cell centers in row-major order") {
        const Grid2D g = parse_geometry(".E\n..\n", 0.5);
        ScalarField f(g);
        f[g.index(0, 0)] = 1.5;
        f[g.index(0, 1)] = 2.5;
        f[g.index(1, 1)] = -3.0;
        TempDir dir("io_snap");
        const std::string path = (dir.path / "m.csv").string();
        write_snapshot(path, f);
        CHECK(read_text_file(path) ==
              "x,y,value\n"
              "0.25,0.25,1.5\n"
              "0.25,0.75,2.5\n"
              "0.75,0.75,-3\n");
    }

    TEST_CASE("key-value manifests keep insertion order") {
        TempDir dir("io_kv");
        const std::string path = (dir.path / "manifest.txt").string();
        write_key_values(path, {{"run.mode", "mfg"}, {"solver.T", "50"}, {"note", "a b"}});
        CHECK(read_text_file(path) == "run.mode=mfg\nsolver.T=50\nnote=a b\n");
    }

    TEST_CASE("join_doubles") {
        CHECK(join_doubles({1.0, 2.5, 0.02}) == "1,2.5,0.02");
        CHECK(join_doubles({}) == "");
        CHECK(join_doubles({-0.5}) == "-0.5");
    }
}
