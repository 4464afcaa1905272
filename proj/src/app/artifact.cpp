#include "app/artifact.hpp"

#include "dks/error.hpp"
#include "dks/simd/kernels.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dks::app {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_csv(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (std::isnan(v))
                    return "nan";
                if (std::isinf(v))
                    return v > 0 ? "inf" : "-inf";
                return format_number(v);
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else {
                return csv_escape(v);
            }
        },
        c);
}

Json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v))
                    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
                return v;
            } else {
                return v;
            }
        },
        c);
}

std::string cell_text(const Cell& c) {
    if (const double* d = std::get_if<double>(&c)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6g", *d);
        return buf;
    }
    return cell_csv(c);
}

} // namespace

Json base_meta(const RunConfig& cfg) {
    Json m = Json::object();
    m["tool"] = "dks";
    m["version"] = DKS_VERSION;
    m["command"] = cfg.command;
    m["config"] = serialize_config(cfg);
    m["kernel_backend"] = std::string(simd::to_string(simd::active_backend()));
    return m;
}

std::string to_csv(const Artifact& a) {
    std::string out;
    for (const auto& [key, value] : a.meta.items()) {
        if (key == "config") {
            // one comment line per config entry keeps the block line-oriented
            std::istringstream in(value.get<std::string>());
            std::string line;
            while (std::getline(in, line))
                out += "# config: " + line + "\n";
            continue;
        }
        out += "# " + key + ": " + value.dump() + "\n";
    }
    for (std::size_t i = 0; i < a.table.columns.size(); ++i)
        out += (i ? "," : "") + csv_escape(a.table.columns[i]);
    out += "\n";
    for (const auto& row : a.table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + cell_csv(row[i]);
        out += "\n";
    }
    return out;
}

std::string to_json(const Artifact& a) {
    Json doc = Json::object();
    doc["meta"] = a.meta;
    if (a.json_data) {
        doc["data"] = *a.json_data;
    } else {
        Json rows = Json::array();
        for (const auto& row : a.table.rows) {
            Json r = Json::object();
            for (std::size_t i = 0; i < row.size(); ++i)
                r[a.table.columns[i]] = cell_json(row[i]);
            rows.push_back(std::move(r));
        }
        doc["data"] = std::move(rows);
    }
    return doc.dump(2) + "\n";
}

std::string render(const Artifact& a, Format f) { return f == Format::Json ? to_json(a) : to_csv(a); }

std::string to_text(const Table& t) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        width[i] = t.columns[i].size();
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (std::size_t i = 0; i < row.size(); ++i) {
            r.push_back(cell_text(row[i]));
            width[i] = std::max(width[i], r.back().size());
        }
        cells.push_back(std::move(r));
    }
    std::string out;
    const auto emit = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out += r[i];
            if (i + 1 < r.size())
                out += std::string(width[i] - r[i].size() + 2, ' ');
        }
        out += "\n";
    };
    emit(t.columns);
    for (const auto& r : cells)
        emit(r);
    return out;
}

std::string embedded_config(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const Json doc = Json::parse(text);
        if (!doc.contains("meta") || !doc["meta"].contains("config"))
            fail(ErrorCode::InvalidArgument, "artifact has no embedded config");
        return doc["meta"]["config"].get<std::string>();
    }
    std::istringstream in(text);
    std::string line, cfg;
    const std::string prefix = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0)
            cfg += line.substr(prefix.size()) + "\n";
        else if (line.rfind("#", 0) != 0)
            break;
    }
    if (cfg.empty())
        fail(ErrorCode::InvalidArgument, "artifact has no embedded config");
    return cfg;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::InvalidArgument, "cannot write output file " + path);
    out << content;
    if (!out)
        fail(ErrorCode::InvalidArgument, "failed writing output file " + path);
}

} // namespace dks::app
