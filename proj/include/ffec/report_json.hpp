#ifndef FFEC_REPORT_JSON_HPP
#define FFEC_REPORT_JSON_HPP

// Canonical JSON for reports: insertion-ordered keys, floating point
// printed with 17 significant digits (equal doubles always serialize to
// identical bytes), NaN and infinities rendered as null. Every report
// carries a schema_version marker so downstream readers can pin layouts.

#include <string>

#include "json.hpp"

namespace ffec {

using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// Two-space indentation when pretty, single line otherwise.
std::string dump_canonical(const Json& j, bool pretty = true);

// { "schema_version": ..., "kind": kind }
Json report_header(const std::string& kind);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ffec

#endif
