#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "crn/dimensions.hpp"
#include "crn/network.hpp"
#include "crn/parser.hpp"
#include "crn/scan.hpp"

namespace crn {

using Json = nlohmann::ordered_json;

struct InputFile {
  std::string path;
  std::string sha256;
};

std::string sha256_hex(const std::string& bytes);

// Versioned envelope shared by all report payloads:
// { schema_version, tool{name, version}, command, inputs[], payload }.
// All numbers are integers and all rationals are "p/q" strings, so reports
// are byte-stable except for explicitly labeled wall-clock fields.
Json report_envelope(const std::string& command, const std::vector<InputFile>& inputs,
                     Json payload);

Json check_payload(const EGraph& g, const std::vector<ParseError>& warnings, bool include_bases);

Json pair_payload(const EGraph& network, const EGraph& host, const DimensionReport& report,
                  bool include_witnesses);

Json scan_payload(const EGraph& network, const ScanResult& result, VertexSetMode mode,
                  long long wall_ms);

}  // namespace crn
