#ifndef SECRETSHARE_SOURCE_IO_HPP
#define SECRETSHARE_SOURCE_IO_HPP

#include <string>

#include <json.hpp>

#include "secretshare/source_model.hpp"

namespace secretshare {

/// Source file schema:
/// {"participants":[{"name":"X1","symbols":["0","1"]},...],
///  "dealers":[...],
///  "pmf":[{"outcome":["0","1","0"],"p":0.25},...]}
/// Outcomes list symbol labels, participants first then dealers; unlisted
/// outcomes have probability zero. The loader rejects totals outside
/// [1 - 1e-9, 1 + 1e-9].
JointSource parse_source_json(const nlohmann::json& j);
nlohmann::json source_to_json(const JointSource& src);

JointSource load_source_file(const std::string& path);
void save_source_file(const JointSource& src, const std::string& path);

/// CLI access-structure grammar: "aon", "thr:<L>:<t>:<z>",
/// "min:<set>;<set>;..." with sets like "1,2".
struct AccessSpec {
    std::string text;
};

AccessStructure parse_access_spec(const std::string& text, int L);

}  // namespace secretshare

#endif
