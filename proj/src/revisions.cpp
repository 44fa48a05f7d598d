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
#include "epinowcast/revisions.hpp"
#include "epinowcast/csv.hpp"
#include "epinowcast/error.hpp"
#include "epinowcast/ingest.hpp"

#include <algorithm>
#include <filesystem>

namespace epinowcast
{

Snapshot::Snapshot(Date retrieved_on, DailySeries series)
    : m_retrieved_on(retrieved_on)
    , m_series(std::move(series))
{
    if (!m_series.empty() && m_retrieved_on < m_series.last_date()) {
        throw Error(ErrorCode::InvalidArgument,
                    "snapshot retrieved " + format_iso_date(m_retrieved_on) + " contains later reporting date " +
                        format_iso_date(m_series.last_date()),
                    m_series.last_date(), m_series.name());
    }
}

void SnapshotStore::add(Snapshot snapshot)
{
    Date key            = snapshot.retrieved_on();
    auto [it, inserted] = m_snapshots.emplace(key, std::move(snapshot));
    if (!inserted) {
        throw Error(ErrorCode::DuplicateDate, "a snapshot retrieved on " + format_iso_date(key) + " already exists",
                    key);
    }
}

const Snapshot& SnapshotStore::get(Date retrieved_on) const
{
    auto it = m_snapshots.find(retrieved_on);
    if (it == m_snapshots.end()) {
        throw Error(ErrorCode::SnapshotNotFound, "no snapshot retrieved on " + format_iso_date(retrieved_on),
                    retrieved_on);
    }
    return it->second;
}

std::vector<Date> SnapshotStore::retrieval_dates() const
{
    std::vector<Date> out;
    for (const auto& entry : m_snapshots) {
        out.push_back(entry.first);
    }
    return out;
}

SnapshotStore load_snapshot_store(const std::string& directory)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(directory, ec)) {
        throw Error(ErrorCode::Io, "'" + directory + "' is not a directory");
    }
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".csv") {
            files.push_back(entry.path());
        }
    }
    if (ec) {
        throw Error(ErrorCode::Io, "cannot list '" + directory + "': " + ec.message());
    }
    std::sort(files.begin(), files.end());

    SnapshotStore store;
    for (const auto& path : files) {
        auto retrieved = parse_iso_date(path.stem().string());
        if (!retrieved) {
            continue;
        }
        store.add(Snapshot(*retrieved, load_long_daily(path.string(), "official")));
    }
    return store;
}

std::optional<double> revision_share(double v_old, double v_new)
{
    if (v_new == 0.0) {
        return std::nullopt;
    }
    return (v_new - v_old) / v_new;
}

std::optional<double> revision_share(const Snapshot& older, const Snapshot& newer, Date reporting_date)
{
    if (!(older.retrieved_on() < newer.retrieved_on())) {
        throw Error(ErrorCode::InvalidArgument, "older snapshot (" + format_iso_date(older.retrieved_on()) +
                                                    ") must precede newer (" +
                                                    format_iso_date(newer.retrieved_on()) + ")");
    }
    if (older.retrieved_on() < reporting_date) {
        throw Error(ErrorCode::InvalidArgument,
                    "reporting date " + format_iso_date(reporting_date) + " is after the older retrieval date",
                    reporting_date);
    }
    auto v_new = newer.series().at(reporting_date);
    if (!v_new) {
        throw Error(ErrorCode::MissingDate,
                    "newer snapshot has no value for " + format_iso_date(reporting_date), reporting_date);
    }
    return revision_share(older.series().at(reporting_date).value_or(0.0), *v_new);
}

std::vector<RevisionRow> revision_profile(const SnapshotStore& store, Date newer_retrieval, Date older_retrieval)
{
    const Snapshot& newer = store.get(newer_retrieval);
    const Snapshot& older = store.get(older_retrieval);
    if (!(older.retrieved_on() < newer.retrieved_on())) {
        throw Error(ErrorCode::InvalidArgument, "older retrieval " + format_iso_date(older_retrieval) +
                                                    " must precede newer retrieval " +
                                                    format_iso_date(newer_retrieval));
    }
    std::vector<RevisionRow> rows;
    for (const auto& [d, v_new] : newer.series().observations()) {
        double v_old = older.series().at(d).value_or(0.0);
        rows.push_back({d, v_old, v_new, revision_share(v_old, v_new)});
    }
    return rows;
}

std::string revision_profile_to_csv(const std::vector<RevisionRow>& rows)
{
    std::string out = "reporting_date,old_value,new_value,share\n";
    for (const auto& r : rows) {
        out += format_iso_date(r.reporting_date) + "," + csv::format_shortest(r.old_value) + "," +
               csv::format_shortest(r.new_value) + "," + (r.share ? csv::format_shortest(*r.share) : "NA") + "\n";
    }
    return out;
}

WeekendGap weekend_gap(const DailySeries& series, const DateWindow& window)
{
    double weekend_sum = 0.0;
    double weekday_sum = 0.0;
    int weekend_count  = 0;
    int weekday_count  = 0;
    for (const auto& [d, v] : series.observations()) {
        if (!window.contains(d)) {
            continue;
        }
        if (is_weekend(d)) {
            weekend_sum += v;
            ++weekend_count;
        }
        else {
            weekday_sum += v;
            ++weekday_count;
        }
    }
    if (weekend_count == 0 || weekday_count == 0) {
        throw Error(ErrorCode::EmptyGroup, "window needs at least one weekend and one weekday observation of '" +
                                               series.name() + "'",
                    std::nullopt, series.name());
    }
    WeekendGap gap;
    gap.weekend_mean = weekend_sum / weekend_count;
    gap.weekday_mean = weekday_sum / weekday_count;
    if (gap.weekday_mean == 0.0) {
        throw Error(ErrorCode::InvalidArgument, "weekday mean of '" + series.name() + "' is zero", std::nullopt,
                    series.name());
    }
    gap.ratio = gap.weekend_mean / gap.weekday_mean - 1.0;
    return gap;
}

} // namespace epinowcast
