#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "railgauge/coherent.hpp"
#include "railgauge/measurement.hpp"

namespace railgauge {

/// Serialization keeps key order fixed so identical runs produce identical
/// bytes. JSON numbers are emitted with shortest-round-trip precision; CSV
/// cells use 15 significant digits. Under the exact backend every
/// probability field gains a sibling "<name>_frac" carrying the exact
/// fraction string.

using OrderedJson = nlohmann::ordered_json;

/// %.15g
std::string format_double(double v);

/// Ancilla signs as a compact string, one of "+-" per mode 2..n (e.g. "+-+").
std::string signs_to_string(const std::vector<int>& signs);
/// Parses the same format (also accepts n-1 comma-separated +1/-1 entries).
std::vector<int> signs_from_string(const std::string& text, int n_modes);

OrderedJson report_to_json(const MeasurementReport& rep);
OrderedJson unitary_to_json(const Interferometer& itf);
OrderedJson mesh_to_json(const std::vector<BeamSplitter>& mesh);
OrderedJson sweep_to_json(const SweepResult& sweep);
OrderedJson coherent_to_json(const CoherentResult& result, const std::string& method);

/// Columns: kind,n,s_plus,s_minus,overall — one row per sweep point.
std::string sweep_to_csv(const SweepResult& sweep);

/// Columns: pattern,total_photons,P_plus,P_minus in canonical pattern order;
/// the pattern cell is space-separated occupancies. Needs a report produced
/// with keep_patterns.
std::string patterns_to_csv(const MeasurementReport& rep);

} // namespace railgauge
