#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "mrp/catalog.hpp"
#include "mrp/fit.hpp"
#include "mrp/sampler.hpp"
#include "mrp/simulate.hpp"

namespace mrp {

// --- calendar ---------------------------------------------------------
// Day stamps are real days since 1970-01-01; fractional days carry the
// time of day.

double parse_date(const std::string& iso);       // YYYY-MM-DD[THH:MM[:SS]]
double parse_day_or_date(const std::string& s);  // numeric day stamp or ISO date
std::string format_day(double day);              // ISO date, time appended if fractional

// --- catalog CSV ------------------------------------------------------
// Header `date,magnitude[,id]`; the date column takes ISO-8601 dates or
// plain day numbers. Rows are sorted by time on load.

EventCatalog load_catalog_csv(const std::string& path);
void save_catalog_csv(const std::string& path, const EventCatalog& catalog);

// --- JSON documents ----------------------------------------------------

std::string sequence_to_json(const SequenceData& seq);
SequenceData sequence_from_json(const std::string& text);

struct PriorsFile {
    ModelPriors priors;
    int cut_index = 0;
    std::vector<std::string> repairs;
    ElicitOptions options;
};

std::string priors_to_json(const PriorsFile& file);
PriorsFile priors_from_json(const std::string& text);

TrueModel model_from_json(const std::string& text);
std::string model_to_json(const TrueModel& model);

// chains.jsonl: one JSON object per retained draw; sidecar metadata JSON
// carries the config and digests needed to reproduce the run.
void save_chains(const std::string& jsonl_path, const std::string& meta_path,
                 const ChainOutput& output);
ChainOutput load_chains(const std::string& jsonl_path, const std::string& meta_path);

// --- small file helpers -------------------------------------------------

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// RFC 4180 rows: fields quoted when they contain comma, quote or newline.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::ofstream out_;
};

}  // namespace mrp
