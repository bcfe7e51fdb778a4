#pragma once

// JSON and CSV emission for reports and certificates, plus channel file
// ingestion.  All report objects carry "schema": 1.  Serialized certificates
// are re-validated at emission time: tau members re-pass the PPT' membership
// check and input states must be unit norm; the booleans land in the output.
// Non-finite values serialize as the string "inf".

#include <string>
#include <vector>

#include "json.hpp"
#include "qcap/channel_bounds.hpp"
#include "qcap/eg_codes.hpp"
#include "qcap/verify.hpp"

namespace qcap {

using json = nlohmann::ordered_json;

json to_json(const Matrix& m);  // nested arrays of [re, im], row-major
Matrix matrix_from_json(const json& j);

json to_json(const PureState& s);
json to_json(const PptPrimeElement& t);
json to_json(const BoundReport& r);
json to_json(const HierarchyReport& h);
json to_json(const SuiteReport& s);

// Channel files: {"schema": 1, "name": ..., "d_in": ..., "d_out": ...,
// "kraus": [matrix, ...]}.  Loading validates shape consistency and CPTP;
// loaded channels carry no covariance declarations.
json channel_to_json(const QuantumChannel& n);
QuantumChannel channel_from_json(const json& j);
QuantumChannel load_channel_file(const std::string& path);

// CSV with "%.12g" cells.
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);
std::string decay_csv(const std::vector<DecayRow>& rows);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace qcap
