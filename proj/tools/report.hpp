#ifndef DLAMBDA_TOOLS_REPORT_HPP
#define DLAMBDA_TOOLS_REPORT_HPP

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace dlambda::cli {

using Json = nlohmann::ordered_json;

/// Tabular command output with the resolved configuration attached.
struct Report
{
    std::string command;
    std::string rerun;      // command line that reproduces the file
    Json config = Json::object();
    Json summary = Json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

/// Shortest round-trip decimal form; "nan"/"inf" for non-finite values.
std::string format_number(double v);

void write_csv(std::ostream& os, const Report& report);
void write_json(std::ostream& os, const Report& report);

}  // namespace dlambda::cli

#endif
