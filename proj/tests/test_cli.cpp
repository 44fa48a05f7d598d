/*
* Copyright (C) 2026 The epinowcast authors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
// Drives the installed command-line binary as a subprocess.
#include "epinowcast/csv.hpp"
#include "epinowcast/ingest.hpp"
#include "epinowcast/report.hpp"
#include "test_util.hpp"

#include <json.hpp>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>

#ifndef EPINOWCAST_CLI_PATH
#error "EPINOWCAST_CLI_PATH must point at the command-line binary"
#endif

using namespace epinowcast;

namespace
{

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args, const test::TempDir& dir)
{
    std::string out_file = dir.file("stdout.txt");
    std::string err_file = dir.file("stderr.txt");
    std::string cmd = std::string("'") + EPINOWCAST_CLI_PATH + "' " + args + " >'" + out_file + "' 2>'" + err_file + "'";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out       = csv::read_file(out_file);
    r.err       = csv::read_file(err_file);
    return r;
}

} // namespace

TEST_CASE("Cli.exitCodes")
{
    test::TempDir dir("cli");
    CHECK_EQ(run("fit --fixture --predictor jhu --lag 0", dir).exit_code, 0);
    CHECK_EQ(run("--help", dir).exit_code, 0);
    CHECK_EQ(run("", dir).exit_code, 1);
    CHECK_EQ(run("fit --fixture --bogus", dir).exit_code, 1);
    CHECK_EQ(run("fit --fixture --format xml", dir).exit_code, 1);
    CHECK_EQ(run("fit --fixture --lag 31", dir).exit_code, 1);
    CHECK_EQ(run("fit --predictor jhu", dir).exit_code, 1);
    CHECK_EQ(run("frobnicate", dir).exit_code, 1);

    auto bad = run("fit --fixture --predictor jhu --from 2020-01-19 --to 2020-03-28", dir);
    CHECK_EQ(bad.exit_code, 2);
    CHECK(bad.out.empty());
    auto j = nlohmann::json::parse(bad.err);
    CHECK_EQ(j["error"], "NonPositiveValue");
    CHECK(j.contains("date"));
    CHECK(j.contains("message"));

    auto window = run("compare --fixture --from 2021-01-01 --to 2021-01-31", dir);
    CHECK_EQ(window.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(window.err)["error"], "EmptyIntersection");

    auto missing = run("fit --target '" + dir.file("nope.csv") + "' --fixture", dir);
    CHECK_EQ(missing.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(missing.err)["error"], "IoError");

    auto inverted = run("fit --fixture --from 2020-03-28 --to 2020-03-03", dir);
    CHECK_EQ(inverted.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(inverted.err)["error"], "InvalidArgument");
}

TEST_CASE("Cli.fitJsonMatchesLibraryBitForBit")
{
    test::TempDir dir("cli");
    const auto& fx = load_fixture();
    auto window    = DateWindow::checked(make_date(2020, 3, 3), make_date(2020, 3, 28));
    for (auto [name, lag] : {std::pair{"jhu", 0}, std::pair{"google", 3}, std::pair{"twitter", 3}}) {
        auto r = run(std::string("fit --fixture --predictor ") + name + " --lag " + std::to_string(lag) +
                         " --format json",
                     dir);
        REQUIRE_EQ(r.exit_code, 0);
        auto expected = to_json(make_report(fit_nowcast({fx.rki, fx.by_name(name), lag, true, window})));
        CHECK_EQ(r.out, expected);
        // full-precision numbers survive a parse
        auto j = nlohmann::json::parse(r.out);
        CHECK_EQ(j["r2"].get<double>(), fit_report_from_json(expected).r2);
    }
}

TEST_CASE("Cli.textReportStars")
{
    test::TempDir dir("cli");
    auto r = run("fit --fixture --predictor jhu", dir);
    CHECK(r.out.find("-0.482**") != std::string::npos);
    CHECK(r.out.find("0.799***") != std::string::npos);
    CHECK(r.out.find("\x1b[") == std::string::npos);
}

TEST_CASE("Cli.everyCommandIsDeterministic")
{
    test::TempDir dir("cli");
    csv::write_file(dir.file("a.csv"), "date,value\n2020-03-01,3\n2020-03-02,9\n2020-03-03,6\n");
    csv::write_file(dir.file("jhu.csv"), "Province/State,Country/Region,Lat,Long,3/1/20,3/2/20,3/3/20\n"
                                         ",Germany,51,9,100,130,120\n");
    std::filesystem::create_directories(dir.path() / "store");
    csv::write_file((dir.path() / "store" / "2020-03-30.csv").string(), "date,value\n2020-03-29,3380\n");
    csv::write_file((dir.path() / "store" / "2020-03-31.csv").string(),
                    "date,value\n2020-03-29,10000\n2020-03-30,500\n");
    std::string store = "'" + (dir.path() / "store").string() + "'";
    auto model        = dir.file("model.json");
    REQUIRE_EQ(run("fit --fixture --predictor google --lag 3 --format json -o '" + model + "'", dir).exit_code, 0);

    for (std::string cmd : {std::string("fit --fixture --predictor twitter --lag 3"),
                            std::string("fit --fixture --predictor google --lag 3 --format json --smearing"),
                            std::string("sweep --fixture --predictor google --format csv --all-metrics"),
                            std::string("sweep --fixture --predictor twitter --format json"),
                            std::string("sweep --fixture --predictor jhu"),
                            std::string("compare --fixture --format csv"),
                            std::string("compare --fixture --format json"),
                            std::string("revisions --store ") + store + " --old 2020-03-30 --new 2020-03-31",
                            std::string("revisions --store ") + store + " --old 2020-03-30 --new 2020-03-31 --format csv",
                            std::string("predict --model '") + model + "' --fixture --predictor google",
                            std::string("predict --model '") + model + "' --value 39 --date 2020-03-28 --format json",
                            std::string("index --input '") + dir.file("a.csv") + "'",
                            std::string("convert --input '") + dir.file("jhu.csv") + "'"}) {
        auto first  = run(cmd, dir);
        auto second = run(cmd, dir);
        CHECK_MESSAGE(first.exit_code == 0, cmd, "\n", first.err);
        CHECK_MESSAGE(first.out == second.out, cmd);
        CHECK_MESSAGE(!first.out.empty(), cmd);
        CHECK_MESSAGE(first.out.find("generated_at") == std::string::npos, cmd);
    }

    auto fig1 = dir.file("fig1.csv"), fig2 = dir.file("fig2.csv");
    REQUIRE_EQ(run("predict --fixture --figure '" + fig1 + "'", dir).exit_code, 0);
    REQUIRE_EQ(run("predict --fixture --figure '" + fig2 + "'", dir).exit_code, 0);
    CHECK_EQ(csv::read_file(fig1), csv::read_file(fig2));
}

TEST_CASE("Cli.stampIsOptIn")
{
    test::TempDir dir("cli");
    auto r = run("fit --fixture --format json --stamp", dir);
    REQUIRE_EQ(r.exit_code, 0);
    CHECK(nlohmann::json::parse(r.out).contains("generated_at"));
}

TEST_CASE("Cli.fitThenPredictRoundTrip")
{
    test::TempDir dir("cli");
    auto model = dir.file("google.json");
    REQUIRE_EQ(run("fit --fixture --predictor google --lag 3 --format json -o '" + model + "'", dir).exit_code, 0);
    auto report = fit_report_from_json(csv::read_file(model));

    // Google on Mar 25 predicts Mar 28.
    auto table = run("predict --model '" + model + "' --fixture --predictor google", dir);
    REQUIRE_EQ(table.exit_code, 0);
    CHECK(table.out.rfind("date,predicted,actual\n", 0) == 0);
    double google_25 = *load_fixture().google.at(make_date(2020, 3, 25));
    std::string expected_row =
        "2020-03-28," + csv::format_shortest(report.predict(google_25, make_date(2020, 3, 28))) + ",2212\n";
    CHECK_MESSAGE(table.out.find(expected_row) != std::string::npos, expected_row);
    // last prediction reaches three days past the last Google date
    CHECK(table.out.find("2020-03-31,") != std::string::npos);
    CHECK(table.out.find("2020-04-01,") == std::string::npos);

    auto one = run("predict --model '" + model + "' --value 1 --date 2020-03-28 --format json", dir);
    REQUIRE_EQ(one.exit_code, 0);
    double p = nlohmann::json::parse(one.out)["predicted"].get<double>();
    CHECK(p == doctest::Approx(std::exp(report.coefficient("intercept").estimate + report.weekend_coefficient()))
                   .epsilon(1e-12));

    auto bad = run("predict --model '" + model + "' --value 0 --date 2020-03-28", dir);
    CHECK_EQ(bad.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(bad.err)["error"], "NonPositiveValue");

    csv::write_file(dir.file("broken.json"), "{\"spec\": {}}");
    auto broken = run("predict --model '" + dir.file("broken.json") + "' --value 3 --date 2020-03-28", dir);
    CHECK_EQ(broken.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(broken.err)["error"], "ParseError");
}

TEST_CASE("Cli.sweepSelection")
{
    test::TempDir dir("cli");
    auto twitter = run("sweep --fixture --predictor twitter --rule max_adj_r2 --format json", dir);
    REQUIRE_EQ(twitter.exit_code, 0);
    CHECK_EQ(nlohmann::json::parse(twitter.out)["selected_lag"], 3);

    auto single = run("sweep --fixture --predictor google --max-lag 0 --format csv", dir);
    REQUIRE_EQ(single.exit_code, 0);
    CHECK_EQ(std::count(single.out.begin(), single.out.end(), '\n'), 3);

    auto plot = dir.file("fig5.csv");
    auto google = run("sweep --fixture --predictor google --max-lag 10 --emit-plot '" + plot + "'", dir);
    REQUIRE_EQ(google.exit_code, 0);
    CHECK(google.out.find("selected lag: 2") != std::string::npos);
    auto rows = parse_sweep_csv(csv::read_file(plot));
    CHECK_EQ(rows.size(), 22u);
}

TEST_CASE("Cli.compareAndRevisions")
{
    test::TempDir dir("cli");
    auto plot = dir.file("fig2.csv");
    auto cmp  = run("compare --fixture --format json --emit-plot '" + plot + "'", dir);
    REQUIRE_EQ(cmp.exit_code, 0);
    CHECK(std::abs(nlohmann::json::parse(cmp.out)["mape"].get<double>() - 0.790) <= 0.005);
    CHECK(csv::read_file(plot).rfind("date,official,alternative,ape,signed_difference\n", 0) == 0);

    csv::write_file(dir.file("s.csv"), "date,value\n2020-03-01,3\n2020-03-02,9\n");
    auto self = run("compare --official '" + dir.file("s.csv") + "' --alternative '" + dir.file("s.csv") +
                        "' --from 2020-03-01 --to 2020-03-02 --format json",
                    dir);
    REQUIRE_EQ(self.exit_code, 0);
    CHECK_EQ(nlohmann::json::parse(self.out)["mape"].get<double>(), 0.0);

    auto store = dir.path() / "store";
    std::filesystem::create_directories(store);
    csv::write_file((store / "2020-03-30.csv").string(), "date,value\n2020-03-28,10\n2020-03-29,20\n");
    csv::write_file((store / "2020-03-31.csv").string(), "date,value\n2020-03-28,10\n2020-03-29,20\n");
    auto same = run("revisions --store '" + store.string() + "' --old 2020-03-30 --new 2020-03-31 --format csv", dir);
    REQUIRE_EQ(same.exit_code, 0);
    CHECK_EQ(same.out, "reporting_date,old_value,new_value,share\n2020-03-28,10,10,0\n2020-03-29,20,20,0\n");

    auto missing = run("revisions --store '" + store.string() + "' --old 2020-03-29 --new 2020-03-31", dir);
    CHECK_EQ(missing.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(missing.err)["error"], "SnapshotNotFound");
    CHECK_EQ(run("revisions --store '" + store.string() + "' --old 2020-03-30", dir).exit_code, 1);
}

TEST_CASE("Cli.indexAndConvert")
{
    test::TempDir dir("cli");
    csv::write_file(dir.file("a.csv"), "date,value\n2020-03-01,3\n2020-03-02,9\n");
    auto idx = run("index --input '" + dir.file("a.csv") + "'", dir);
    REQUIRE_EQ(idx.exit_code, 0);
    CHECK_EQ(idx.out, "date,value\n2020-03-01,33\n2020-03-02,100\n");

    csv::write_file(dir.file("z.csv"), "date,value\n2020-03-01,0\n");
    auto zero = run("index --input '" + dir.file("z.csv") + "'", dir);
    CHECK_EQ(zero.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(zero.err)["error"], "AllZero");

    csv::write_file(dir.file("jhu.csv"), "Province/State,Country/Region,Lat,Long,3/30/20,3/31/20,4/1/20\n"
                                         ",Germany,51,9,57298,62095,62000\n");
    auto conv = run("convert --input '" + dir.file("jhu.csv") + "' --country Germany", dir);
    REQUIRE_EQ(conv.exit_code, 0);
    CHECK_EQ(conv.out, "date,value\n2020-03-31,4797\n2020-04-01,-95\n");
    CHECK(conv.err.find("warning") != std::string::npos);

    auto nowhere = run("convert --input '" + dir.file("jhu.csv") + "' --country Atlantis", dir);
    CHECK_EQ(nowhere.exit_code, 2);
    CHECK_EQ(nlohmann::json::parse(nowhere.err)["error"], "CountryNotFound");
}
