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
#ifndef EPINOWCAST_REVISIONS_HPP
#define EPINOWCAST_REVISIONS_HPP

#include "epinowcast/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace epinowcast
{

/// The official series as published on one retrieval date (a vintage).
class Snapshot
{
public:
    /// Throws InvalidArgument if any reporting date lies after retrieved_on.
    Snapshot(Date retrieved_on, DailySeries series);

    Date retrieved_on() const
    {
        return m_retrieved_on;
    }
    const DailySeries& series() const
    {
        return m_series;
    }

private:
    Date m_retrieved_on;
    DailySeries m_series;
};

/// Vintages keyed by retrieval date. Append-only.
class SnapshotStore
{
public:
    /// Throws DuplicateDate if a snapshot for that retrieval date exists.
    void add(Snapshot snapshot);
    /// Throws SnapshotNotFound.
    const Snapshot& get(Date retrieved_on) const;
    bool contains(Date retrieved_on) const
    {
        return m_snapshots.count(retrieved_on) != 0;
    }
    std::size_t size() const
    {
        return m_snapshots.size();
    }
    std::vector<Date> retrieval_dates() const;

private:
    std::map<Date, Snapshot> m_snapshots;
};

/// Loads every `YYYY-MM-DD.csv` (long daily format) in a directory; other files are ignored.
/// Throws Io, Parse, DuplicateDate or InvalidArgument.
SnapshotStore load_snapshot_store(const std::string& directory);

/// (v_new - v_old) / v_new, the share of the newer total added since the older vintage.
/// nullopt when v_new is zero (undefined).
std::optional<double> revision_share(double v_old, double v_new);

/// Share for one reporting date; v_old defaults to 0 when the older vintage lacks the date.
/// Throws InvalidArgument unless older precedes newer and reporting_date <= older.retrieved_on(),
/// MissingDate if the newer vintage lacks the date.
std::optional<double> revision_share(const Snapshot& older, const Snapshot& newer, Date reporting_date);

struct RevisionRow {
    Date reporting_date;
    double old_value = 0.0;
    double new_value = 0.0;
    std::optional<double> share;
};

/// One row per reporting date in the newer vintage, ascending. Dates after the older retrieval
/// are entirely new and get share 1 (or undefined for a zero count).
std::vector<RevisionRow> revision_profile(const SnapshotStore& store, Date newer_retrieval, Date older_retrieval);

std::string revision_profile_to_csv(const std::vector<RevisionRow>& rows);

struct WeekendGap {
    double weekend_mean = 0.0;
    double weekday_mean = 0.0;
    /// weekend_mean / weekday_mean - 1
    double ratio = 0.0;
};

/// Throws EmptyGroup when the window has no weekend or no weekday observation.
WeekendGap weekend_gap(const DailySeries& series, const DateWindow& window);

} // namespace epinowcast

#endif // EPINOWCAST_REVISIONS_HPP
