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
// Command-line front end. Talks to the library exclusively through the C interface.
//
// Exit codes: 0 success, 1 usage error, 2 data/domain error (JSON error object on stderr).

#include "epinowcast/epinowcast.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

constexpr int exit_ok    = 0;
constexpr int exit_usage = 1;
constexpr int exit_data  = 2;

constexpr const char* fixture_window_from = "2020-03-03";
constexpr const char* fixture_window_to   = "2020-03-28";

// Raised when a library call fails; carries the C status so main() can emit the structured error.
struct DataError {
    epn_status status;
    std::string message;
    std::string date;
    std::string source;
};

struct UsageError {
    std::string message;
};

void check(epn_status status)
{
    if (status != EPN_OK) {
        throw DataError{status, epn_last_error_message(), epn_last_error_date(), epn_last_error_source()};
    }
}

struct SeriesDeleter {
    void operator()(epn_series* p) const
    {
        epn_series_free(p);
    }
};
struct ModelDeleter {
    void operator()(epn_model* p) const
    {
        epn_model_free(p);
    }
};
struct SweepDeleter {
    void operator()(epn_sweep* p) const
    {
        epn_sweep_free(p);
    }
};
struct StoreDeleter {
    void operator()(epn_store* p) const
    {
        epn_store_free(p);
    }
};
using Series = std::unique_ptr<epn_series, SeriesDeleter>;
using Model  = std::unique_ptr<epn_model, ModelDeleter>;
using Sweep  = std::unique_ptr<epn_sweep, SweepDeleter>;
using Store  = std::unique_ptr<epn_store, StoreDeleter>;

// Takes ownership of a library-allocated string.
std::string take(char* s)
{
    std::string out = s ? s : "";
    epn_string_free(s);
    return out;
}

Series fixture_series(const std::string& name)
{
    epn_series* out = nullptr;
    check(epn_series_fixture(name.c_str(), &out));
    return Series(out);
}

Series csv_series(const std::string& path, const std::string& name)
{
    epn_series* out = nullptr;
    check(epn_series_load_csv(path.c_str(), name.c_str(), &out));
    return Series(out);
}

std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw DataError{EPN_ERR_IO, "cannot open '" + path + "'", "", ""};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text)) {
        throw DataError{EPN_ERR_IO, "cannot write '" + path + "'", "", ""};
    }
}

std::string stem_of(const std::string& path)
{
    return std::filesystem::path(path).stem().string();
}

epn_format parse_format(const std::string& name)
{
    if (name == "text") {
        return EPN_FORMAT_TEXT;
    }
    if (name == "json") {
        return EPN_FORMAT_JSON;
    }
    return EPN_FORMAT_CSV;
}

std::string utc_timestamp()
{
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Sink {
    std::string output;
    bool stamp = false;

    bool styled() const
    {
        return output.empty() && std::getenv("EPINOWCAST_NO_COLOR") == nullptr && isatty(STDOUT_FILENO);
    }

    void emit(std::string text, epn_format format) const
    {
        if (stamp) {
            if (format == EPN_FORMAT_JSON) {
                auto j            = nlohmann::ordered_json::parse(text);
                j["generated_at"] = utc_timestamp();
                text              = j.dump(2) + "\n";
            }
            else if (format == EPN_FORMAT_TEXT) {
                text += "generated at " + utc_timestamp() + "\n";
            }
        }
        if (output.empty()) {
            std::cout << text;
            std::cout.flush();
        }
        else {
            write_text(output, text);
        }
    }
};

// Target and predictor selection shared by fit and sweep.
struct ModelInputs {
    bool fixture = false;
    std::string target_file;
    std::string target_name = "rki";
    std::string predictor   = "jhu";
    std::string predictor_file;
    std::string from;
    std::string to;

    void add_to(CLI::App* cmd)
    {
        cmd->add_flag("--fixture", fixture, "Use the embedded Germany dataset");
        cmd->add_option("--target", target_file, "Official series as long daily CSV (date,value)");
        cmd->add_option("--target-name", target_name, "Name for the target series")->capture_default_str();
        cmd->add_option("--predictor", predictor,
                        "Predictor name; with --fixture one of jhu, google, twitter")
            ->capture_default_str();
        cmd->add_option("--predictor-file", predictor_file, "Predictor series as long daily CSV (date,value)");
        cmd->add_option("--from", from, "First date of the dependent window (YYYY-MM-DD)");
        cmd->add_option("--to", to, "Last date of the dependent window (YYYY-MM-DD)");
    }

    void resolve_window()
    {
        if (fixture) {
            if (from.empty()) {
                from = fixture_window_from;
            }
            if (to.empty()) {
                to = fixture_window_to;
            }
        }
        if (from.empty() || to.empty()) {
            throw UsageError{"--from and --to are required unless --fixture is given"};
        }
    }

    Series target() const
    {
        if (!target_file.empty()) {
            return csv_series(target_file, target_name);
        }
        if (fixture) {
            return fixture_series("rki");
        }
        throw UsageError{"either --fixture or --target FILE is required"};
    }

    Series predictor_series() const
    {
        if (!predictor_file.empty()) {
            return csv_series(predictor_file, predictor);
        }
        if (fixture) {
            return fixture_series(predictor);
        }
        throw UsageError{"either --fixture or --predictor-file FILE is required"};
    }
};

// ---- fit ----------------------------------------------------------------------------------

struct FitCommand {
    ModelInputs inputs;
    int lag          = 0;
    bool no_weekend  = false;
    bool smearing    = false;
    double rank_tol  = 1e-10;
    std::string format = "text";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("fit", "Fit a log-log nowcast model and report it");
        inputs.add_to(cmd);
        cmd->add_option("--lag", lag, "Predictor lag in days")->capture_default_str()->check(CLI::Range(0, 30));
        cmd->add_flag("--no-weekend", no_weekend, "Drop the weekend dummy");
        cmd->add_flag("--smearing", smearing, "Apply smearing to back-transformed predictions");
        cmd->add_option("--rank-tol", rank_tol, "Relative rank tolerance of the QR solve")->capture_default_str();
        cmd->add_option("--format", format, "Output format")
            ->capture_default_str()
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->add_flag("--stamp", sink.stamp, "Include a generation timestamp");
        cmd->callback([this] {
            run();
        });
    }

    void run()
    {
        inputs.resolve_window();
        Series target    = inputs.target();
        Series predictor = inputs.predictor_series();

        epn_fit_options options = epn_fit_options_default();
        options.lag_days        = lag;
        options.weekend_dummy   = no_weekend ? 0 : 1;
        options.smearing        = smearing ? 1 : 0;
        options.rank_tolerance  = rank_tol;

        epn_model* raw = nullptr;
        check(epn_fit(target.get(), predictor.get(), inputs.from.c_str(), inputs.to.c_str(), &options, &raw));
        Model model(raw);
        epn_format fmt = parse_format(format);
        char* text     = nullptr;
        check(epn_model_render(model.get(), fmt, sink.styled() ? 1 : 0, &text));
        sink.emit(take(text), fmt);
    }
};

// ---- sweep --------------------------------------------------------------------------------

struct SweepCommand {
    ModelInputs inputs;
    int max_lag        = 10;
    std::string rule   = "combined";
    std::string plot_path;
    bool all_metrics   = false;
    std::string format = "text";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("sweep", "Fit the model at every lag 0..max-lag and select one");
        inputs.add_to(cmd);
        inputs.predictor = "google";
        cmd->add_option("--max-lag", max_lag, "Largest lag to try")->capture_default_str()->check(CLI::Range(0, 30));
        cmd->add_option("--rule", rule, "Selection rule")
            ->capture_default_str()
            ->check(CLI::IsMember({"max_adj_r2", "min_mae", "combined"}));
        cmd->add_option("--emit-plot", plot_path, "Write the tidy predictor,lag,metric,value table to PATH");
        cmd->add_flag("--all-metrics", all_metrics, "Include MAPE and R2 in the tidy table");
        cmd->add_option("--format", format, "Output format")
            ->capture_default_str()
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->add_flag("--stamp", sink.stamp, "Include a generation timestamp");
        cmd->callback([this] {
            run();
        });
    }

    void run()
    {
        inputs.resolve_window();
        Series target    = inputs.target();
        Series predictor = inputs.predictor_series();
        epn_rule selection =
            rule == "max_adj_r2" ? EPN_RULE_MAX_ADJ_R2 : (rule == "min_mae" ? EPN_RULE_MIN_MAE : EPN_RULE_COMBINED);

        epn_sweep* raw = nullptr;
        check(epn_sweep_run(target.get(), predictor.get(), inputs.from.c_str(), inputs.to.c_str(), max_lag,
                            selection, &raw));
        Sweep result(raw);

        if (!plot_path.empty()) {
            char* csv = nullptr;
            check(epn_sweep_render(result.get(), EPN_FORMAT_CSV, all_metrics ? 1 : 0, &csv));
            write_text(plot_path, take(csv));
        }
        epn_format fmt = parse_format(format);
        char* text     = nullptr;
        check(epn_sweep_render(result.get(), fmt, all_metrics ? 1 : 0, &text));
        sink.emit(take(text), fmt);
    }
};

// ---- compare ------------------------------------------------------------------------------

struct CompareCommand {
    bool fixture = false;
    std::string official_file;
    std::string alternative_file;
    std::string from;
    std::string to;
    std::string plot_path;
    std::string format = "text";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("compare", "Model-free MAPE of an alternative source against the official one");
        cmd->add_flag("--fixture", fixture, "Compare the embedded JHU series against RKI");
        cmd->add_option("--official", official_file, "Official series (long daily CSV)");
        cmd->add_option("--alternative", alternative_file, "Alternative series (long daily CSV)");
        cmd->add_option("--from", from, "First date (YYYY-MM-DD)");
        cmd->add_option("--to", to, "Last date (YYYY-MM-DD)");
        cmd->add_option("--emit-plot", plot_path, "Write the per-date comparison CSV to PATH");
        cmd->add_option("--format", format, "Output format")
            ->capture_default_str()
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->add_flag("--stamp", sink.stamp, "Include a generation timestamp");
        cmd->callback([this] {
            run();
        });
    }

    void run()
    {
        if (fixture) {
            from = from.empty() ? fixture_window_from : from;
            to   = to.empty() ? fixture_window_to : to;
        }
        if (from.empty() || to.empty()) {
            throw UsageError{"--from and --to are required unless --fixture is given"};
        }
        Series official = !official_file.empty() ? csv_series(official_file, stem_of(official_file))
                          : fixture                ? fixture_series("rki")
                                                   : Series();
        Series alternative = !alternative_file.empty() ? csv_series(alternative_file, stem_of(alternative_file))
                             : fixture                    ? fixture_series("jhu")
                                                          : Series();
        if (!official || !alternative) {
            throw UsageError{"either --fixture or both --official and --alternative are required"};
        }

        if (!plot_path.empty()) {
            char* csv = nullptr;
            check(epn_compare(official.get(), alternative.get(), from.c_str(), to.c_str(), EPN_FORMAT_CSV, nullptr,
                              &csv));
            write_text(plot_path, take(csv));
        }
        epn_format fmt = parse_format(format);
        char* text     = nullptr;
        check(epn_compare(official.get(), alternative.get(), from.c_str(), to.c_str(), fmt, nullptr, &text));
        sink.emit(take(text), fmt);
    }
};

// ---- revisions ----------------------------------------------------------------------------

struct RevisionsCommand {
    std::string store_dir;
    std::string older;
    std::string newer;
    std::string format = "text";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("revisions", "Share of each day's count added between two snapshots");
        cmd->add_option("--store", store_dir, "Directory of YYYY-MM-DD.csv snapshots")->required();
        cmd->add_option("--old", older, "Retrieval date of the older snapshot")->required();
        cmd->add_option("--new", newer, "Retrieval date of the newer snapshot")->required();
        cmd->add_option("--format", format, "Output format")
            ->capture_default_str()
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->add_flag("--stamp", sink.stamp, "Include a generation timestamp");
        cmd->callback([this] {
            run();
        });
    }

    void run()
    {
        epn_store* raw = nullptr;
        check(epn_store_load(store_dir.c_str(), &raw));
        Store store(raw);
        epn_format fmt = parse_format(format);
        char* text     = nullptr;
        check(epn_revision_profile(store.get(), newer.c_str(), older.c_str(), fmt, &text));
        sink.emit(take(text), fmt);
    }
};

// ---- predict ------------------------------------------------------------------------------

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct PredictCommand {
    std::string model_file;
    bool fixture = false;
    std::string predictor = "jhu";
    std::string predictor_file;
    std::string actual_file;
    std::optional<double> value;
    std::string date;
    std::string figure_path;
    std::string format = "csv";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("predict", "Predict official counts from a saved fit report");
        cmd->add_option("--model", model_file, "Fit report JSON written by 'fit --format json'");
        cmd->add_flag("--fixture", fixture, "Use the embedded dataset for predictor and actual values");
        cmd->add_option("--predictor", predictor, "Fixture predictor name (jhu, google, twitter)")
            ->capture_default_str();
        cmd->add_option("--predictor-file", predictor_file, "Predictor series (long daily CSV)");
        cmd->add_option("--actual", actual_file, "Official series to report alongside (long daily CSV)");
        cmd->add_option("--value", value, "Single predictor value");
        cmd->add_option("--date", date, "Date of the single prediction (YYYY-MM-DD)");
        cmd->add_option("--figure", figure_path,
                        "With --fixture: write official, JHU and the three model predictions as tidy CSV");
        cmd->add_option("--format", format, "Output format for single predictions")
            ->capture_default_str()
            ->check(CLI::IsMember({"text", "json", "csv"}));
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->add_flag("--stamp", sink.stamp, "Include a generation timestamp");
        cmd->callback([this] {
            run();
        });
    }

    static Model load_model(const std::string& path)
    {
        epn_model* raw = nullptr;
        check(epn_model_from_json(read_text(path).c_str(), &raw));
        return Model(raw);
    }

    static Model fit_fixture_model(const epn_series* target, const char* predictor, int lag)
    {
        Series x                = fixture_series(predictor);
        epn_fit_options options = epn_fit_options_default();
        options.lag_days        = lag;
        epn_model* raw          = nullptr;
        check(epn_fit(target, x.get(), fixture_window_from, fixture_window_to, &options, &raw));
        return Model(raw);
    }

    // Official counts, raw JHU and the JHU (lag 0), Google and Twitter (lag 3) model predictions.
    void write_figure() const
    {
        if (!fixture) {
            throw UsageError{"--figure requires --fixture"};
        }
        Series rki = fixture_series("rki");
        std::string out = "series,date,value\n";
        auto append_series = [&out](const char* label, const epn_series* s) {
            char date_buf[11];
            for (size_t i = 0; i < epn_series_size(s); ++i) {
                double v = 0.0;
                check(epn_series_get(s, i, date_buf, &v));
                out += std::string(label) + "," + date_buf + "," + format_number(v) + "\n";
            }
        };
        append_series("rki", rki.get());
        Series jhu = fixture_series("jhu");
        append_series("jhu", jhu.get());

        struct Curve {
            const char* label;
            const char* predictor;
            int lag;
        };
        for (const Curve& curve : {Curve{"predicted_jhu", "jhu", 0}, Curve{"predicted_google", "google", 3},
                                   Curve{"predicted_twitter", "twitter", 3}}) {
            Model model  = fit_fixture_model(rki.get(), curve.predictor, curve.lag);
            Series x     = fixture_series(curve.predictor);
            char* csv    = nullptr;
            check(epn_model_predict_series(model.get(), x.get(), nullptr, &csv));
            std::istringstream lines(take(csv));
            std::string line;
            std::getline(lines, line); // header
            while (std::getline(lines, line)) {
                auto first  = line.find(',');
                auto second = line.find(',', first + 1);
                std::string predicted = line.substr(first + 1, second - first - 1);
                if (predicted != "NA") {
                    out += std::string(curve.label) + "," + line.substr(0, first) + "," + predicted + "\n";
                }
            }
        }
        write_text(figure_path, out);
    }

    void run()
    {
        if (!figure_path.empty()) {
            write_figure();
            if (model_file.empty()) {
                return;
            }
        }
        if (model_file.empty()) {
            throw UsageError{"--model FILE is required"};
        }
        Model model = load_model(model_file);

        if (value) {
            if (date.empty()) {
                throw UsageError{"--value requires --date"};
            }
            double predicted = 0.0;
            check(epn_model_predict(model.get(), *value, date.c_str(), &predicted));
            epn_format fmt = parse_format(format);
            std::string text;
            if (fmt == EPN_FORMAT_JSON) {
                nlohmann::ordered_json j = {{"date", date}, {"predictor_value", *value}, {"predicted", predicted}};
                text                     = j.dump(2) + "\n";
            }
            else if (fmt == EPN_FORMAT_CSV) {
                text = "date,predicted\n" + date + "," + format_number(predicted) + "\n";
            }
            else {
                text = date + ": " + format_number(predicted) + "\n";
            }
            sink.emit(text, fmt);
            return;
        }

        Series x = !predictor_file.empty() ? csv_series(predictor_file, predictor)
                   : fixture               ? fixture_series(predictor)
                                           : Series();
        if (!x) {
            throw UsageError{"one of --value, --predictor-file or --fixture is required"};
        }
        Series actual = !actual_file.empty() ? csv_series(actual_file, "actual")
                        : fixture            ? fixture_series("rki")
                                             : Series();
        char* csv = nullptr;
        check(epn_model_predict_series(model.get(), x.get(), actual.get(), &csv));
        sink.emit(take(csv), EPN_FORMAT_CSV);
    }
};

// ---- index / convert ----------------------------------------------------------------------

struct IndexCommand {
    std::string input;
    std::string name = "series";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("index", "Rescale a series so its maximum is 100");
        cmd->add_option("--input", input, "Long daily CSV")->required();
        cmd->add_option("--name", name, "Series name")->capture_default_str();
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->callback([this] {
            run();
        });
    }

    void run()
    {
        Series s        = csv_series(input, name);
        epn_series* raw = nullptr;
        check(epn_series_index_to_100(s.get(), &raw));
        Series indexed(raw);
        char* csv = nullptr;
        check(epn_series_to_csv(indexed.get(), &csv));
        sink.emit(take(csv), EPN_FORMAT_CSV);
    }
};

struct ConvertCommand {
    std::string input;
    std::string country = "Germany";
    Sink sink;

    void add_to(CLI::App& app)
    {
        auto* cmd = app.add_subcommand("convert", "JHU wide cumulative CSV to long daily new cases");
        cmd->add_option("--input", input, "JHU time_series_covid19_confirmed_global.csv style file")->required();
        cmd->add_option("--country", country, "Country/Region to extract")->capture_default_str();
        cmd->add_option("--output,-o", sink.output, "Write to file instead of stdout");
        cmd->callback([this] {
            run();
        });
    }

    void run()
    {
        epn_series* raw      = nullptr;
        size_t negative_days = 0;
        check(epn_series_load_jhu_wide(input.c_str(), country.c_str(), &raw, &negative_days));
        Series daily(raw);
        if (negative_days > 0) {
            std::cerr << "warning: " << negative_days
                      << " day(s) with negative new cases (downward revisions upstream)\n";
        }
        char* csv = nullptr;
        check(epn_series_to_csv(daily.get(), &csv));
        sink.emit(take(csv), EPN_FORMAT_CSV);
    }
};

void print_data_error(const DataError& e)
{
    nlohmann::ordered_json j = {{"error", epn_status_name(e.status)}, {"message", e.message}};
    if (!e.date.empty()) {
        j["date"] = e.date;
    }
    if (!e.source.empty()) {
        j["source"] = e.source;
    }
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Nowcast official daily infection counts from alternative data sources"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(epn_version()));

    FitCommand fit;
    SweepCommand sweep;
    CompareCommand compare;
    RevisionsCommand revisions;
    PredictCommand predict;
    IndexCommand index;
    ConvertCommand convert;
    fit.add_to(app);
    sweep.add_to(app);
    compare.add_to(app);
    revisions.add_to(app);
    predict.add_to(app);
    index.add_to(app);
    convert.add_to(app);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    catch (const UsageError& e) {
        std::cerr << "usage error: " << e.message << "\n";
        return exit_usage;
    }
    catch (const DataError& e) {
        print_data_error(e);
        return exit_data;
    }
    return exit_ok;
}
