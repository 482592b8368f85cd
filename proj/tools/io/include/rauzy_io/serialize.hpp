#pragma once

// JSON and CSV forms of the library's reports, and measure (de)serialization.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "rauzy/appendix.hpp"
#include "rauzy/gasket.hpp"
#include "rauzy/poincare.hpp"
#include "rauzy/random_walk.hpp"
#include "rauzy/schottky.hpp"

namespace rauzy::io {

using nlohmann::ordered_json;

ordered_json to_json(const CartanVec& k);
ordered_json to_json(const PressureReport& r);
ordered_json to_json(const ExponentEstimate& e);
ordered_json to_json(const CoverReport& r);
ordered_json to_json(const BoxCountResult& r);
ordered_json to_json(const EpsilonEstimate& e);
ordered_json to_json(const MeasureSpec& m);
ordered_json to_json(const LyapunovEstimate& l);
ordered_json to_json(const EntropyReport& e);
ordered_json to_json(const DimReport& d);
ordered_json to_json(const SearchResult& r);
ordered_json to_json(const LoxodromyCert& c);
ordered_json to_json(const SchottkyCert& c);
ordered_json to_json(const NarrowCert& c);
ordered_json to_json(const TilingReport& t);
ordered_json to_json(const LemmaA1Report& r);
ordered_json to_json(const EvidenceReport& r);

// {"support": [{"word": "121", "weight": 0.25}, ...], "provenance": "manual"}
MeasureSpec measure_from_json(const ordered_json& j);
MeasureSpec read_measure(const std::filesystem::path& p);

// 17 significant digits.
std::string format_double(double x);

std::string box_count_csv(const BoxCountResult& r);
std::string pressure_csv(const PressureReport& r);

// Pretty-printed JSON with a trailing newline.
std::string dump(const ordered_json& j);

void write_text(const std::filesystem::path& p, const std::string& text);

}  // namespace rauzy::io
