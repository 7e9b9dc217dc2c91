#include "report.hpp"

#include <charconv>
#include <cmath>

namespace dlambda::cli {

namespace {

std::string scalar_text(const Json& v)
{
    if (v.is_number_float())
        return format_number(v.get<double>());
    if (v.is_number())
        return v.dump();
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_null())
        return "nan";
    return v.dump();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Report& report)
{
    os << "# dlambda " << report.command << '\n';
    os << "# rerun: " << report.rerun << '\n';
    for (const auto& [key, value] : report.config.items())
        os << "# " << key << " = " << scalar_text(value) << '\n';
    for (const auto& [key, value] : report.summary.items())
        os << "# summary." << key << " = " << scalar_text(value) << '\n';

    for (std::size_t c = 0; c < report.columns.size(); ++c)
        os << (c ? "," : "") << report.columns[c];
    os << '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << csv_field(scalar_text(row[c]));
        os << '\n';
    }
}

void write_json(std::ostream& os, const Report& report)
{
    Json doc = Json::object();
    doc["command"] = report.command;
    doc["rerun"] = report.rerun;
    doc["config"] = report.config;
    if (!report.summary.empty())
        doc["summary"] = report.summary;
    Json data = Json::array();
    for (const auto& row : report.rows) {
        Json obj = Json::object();
        for (std::size_t c = 0; c < row.size() && c < report.columns.size(); ++c)
            obj[report.columns[c]] = row[c];
        data.push_back(std::move(obj));
    }
    doc["data"] = std::move(data);
    os << doc.dump(2) << '\n';
}

}  // namespace dlambda::cli
