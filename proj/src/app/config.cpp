#include "app/config.hpp"

#include "dks/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dks::app {

namespace {

enum class Kind { Str, Num, Int, Bool, NumList, Fmt };

struct Field {
    std::string key;
    Kind kind;
    std::function<std::optional<std::string>(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&)> set;
    std::optional<std::string> omit_value;     // canonical value that is left out of the text
    std::optional<std::string> default_value;  // emitted when the key is absent
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& key, const std::string& why) {
    fail(ErrorCode::InvalidArgument, "config key '" + key + "': " + why);
}

double to_double(const std::string& key, const std::string& raw) {
    const std::string t = trim(raw);
    double v = 0.0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || p != t.data() + t.size())
        bad(key, "expected a number, got '" + raw + "'");
    return v;
}

int to_int(const std::string& key, const std::string& raw) {
    const std::string t = trim(raw);
    int v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || p != t.data() + t.size())
        bad(key, "expected an integer, got '" + raw + "'");
    return v;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string canonical(const Field& f, const std::string& raw) {
    const std::string t = trim(raw);
    switch (f.kind) {
    case Kind::Str:
        if (t.empty() && f.key != "command")
            bad(f.key, "empty value");
        return t;
    case Kind::Num:
        return format_number(to_double(f.key, t));
    case Kind::Int:
        return std::to_string(to_int(f.key, t));
    case Kind::Bool: {
        const std::string l = lower(t);
        if (l == "true" || l == "1" || l == "yes")
            return "true";
        if (l == "false" || l == "0" || l == "no")
            return "false";
        bad(f.key, "expected true or false, got '" + raw + "'");
    }
    case Kind::NumList: {
        std::string out;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!out.empty())
                out += ',';
            out += format_number(to_double(f.key, item));
        }
        return out;
    }
    case Kind::Fmt: {
        const std::string l = lower(t);
        if (l != "csv" && l != "json")
            bad(f.key, "expected csv or json, got '" + raw + "'");
        return l;
    }
    }
    return t;
}

template <class T>
std::optional<std::string> opt_num(const std::optional<T>& v) {
    if (!v)
        return std::nullopt;
    if constexpr (std::is_same_v<T, int>)
        return std::to_string(*v);
    else
        return format_number(*v);
}

#define NUM_FIELD(name)                                                                          \
    Field {                                                                                      \
        #name, Kind::Num, [](const RunConfig& c) { return opt_num(c.name); },                    \
            [](RunConfig& c, const std::string& v) { c.name = to_double(#name, v); }, {}, {}     \
    }
#define INT_FIELD(name)                                                                          \
    Field {                                                                                      \
        #name, Kind::Int, [](const RunConfig& c) { return opt_num(c.name); },                    \
            [](RunConfig& c, const std::string& v) { c.name = to_int(#name, v); }, {}, {}        \
    }
#define STR_FIELD(name)                                                                          \
    Field {                                                                                      \
        #name, Kind::Str, [](const RunConfig& c) { return c.name; },                             \
            [](RunConfig& c, const std::string& v) { c.name = v; }, {}, {}                       \
    }

const std::vector<Field>& schema() {
    static const std::vector<Field> fields = {
        Field{"command", Kind::Str,
              [](const RunConfig& c) -> std::optional<std::string> {
                  if (c.command.empty())
                      return std::nullopt;
                  return c.command;
              },
              [](RunConfig& c, const std::string& v) { c.command = v; }, std::string{}, {}},
        STR_FIELD(target),
        NUM_FIELD(alpha),
        NUM_FIELD(alpha_im),
        NUM_FIELD(kz),
        Field{"kz_values", Kind::NumList,
              [](const RunConfig& c) -> std::optional<std::string> {
                  if (c.kz_values.empty())
                      return std::nullopt;
                  std::string out;
                  for (double v : c.kz_values)
                      out += (out.empty() ? "" : ",") + format_number(v);
                  return out;
              },
              [](RunConfig& c, const std::string& v) {
                  c.kz_values.clear();
                  std::stringstream ss(v);
                  std::string item;
                  while (std::getline(ss, item, ','))
                      c.kz_values.push_back(to_double("kz_values", item));
              },
              std::string{}, {}},
        NUM_FIELD(kz_min),
        NUM_FIELD(kz_max),
        INT_FIELD(kz_points),
        NUM_FIELD(beta_re),
        NUM_FIELD(beta_im),
        Field{"optimal_beta", Kind::Bool,
              [](const RunConfig& c) -> std::optional<std::string> {
                  if (!c.optimal_beta)
                      return std::nullopt;
                  return std::string("true");
              },
              [](RunConfig& c, const std::string& v) { c.optimal_beta = v == "true"; }, std::string("false"), {}},
        NUM_FIELD(tau),
        STR_FIELD(preset),
        NUM_FIELD(n2),
        NUM_FIELD(n0),
        NUM_FIELD(sigma_eff),
        NUM_FIELD(lambda),
        NUM_FIELD(power),
        NUM_FIELD(spectral_width),
        NUM_FIELD(target_db),
        STR_FIELD(window),
        NUM_FIELD(half_width),
        NUM_FIELD(x_min),
        NUM_FIELD(x_max),
        NUM_FIELD(y_min),
        NUM_FIELD(y_max),
        INT_FIELD(resolution),
        NUM_FIELD(tol_simplex),
        NUM_FIELD(tol_length),
        NUM_FIELD(tol_truncation),
        INT_FIELD(max_iterations),
        Field{"format", Kind::Fmt,
              [](const RunConfig& c) -> std::optional<std::string> { return std::string(to_string(c.format)); },
              [](RunConfig& c, const std::string& v) { c.format = v == "json" ? Format::Json : Format::Csv; }, {},
              std::string("csv")},
        Field{"parallel", Kind::Int,
              [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.parallel); },
              [](RunConfig& c, const std::string& v) { c.parallel = to_int("parallel", v); }, {}, std::string("1")},
        STR_FIELD(out),
    };
    return fields;
}

#undef NUM_FIELD
#undef INT_FIELD
#undef STR_FIELD

// key -> raw value, rejecting unknown and repeated keys.
std::map<std::string, std::string> read_pairs(const std::string& text) {
    std::map<std::string, std::string> pairs;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::InvalidArgument, "config line " + std::to_string(lineno) + " lacks '='");
        const std::string key = trim(line.substr(0, eq));
        const auto& fields = schema();
        if (std::none_of(fields.begin(), fields.end(), [&](const Field& f) { return f.key == key; }))
            fail(ErrorCode::InvalidArgument, "unknown config key '" + key + "' on line " + std::to_string(lineno));
        if (!pairs.emplace(key, line.substr(eq + 1)).second)
            fail(ErrorCode::InvalidArgument, "config key '" + key + "' given twice");
    }
    return pairs;
}

} // namespace

const char* to_string(Format f) noexcept { return f == Format::Json ? "json" : "csv"; }

std::string format_number(double v) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& f : schema())
            k.push_back(f.key);
        return k;
    }();
    return keys;
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    const auto pairs = read_pairs(text);
    for (const auto& f : schema()) {
        const auto it = pairs.find(f.key);
        if (it == pairs.end())
            continue;
        f.set(cfg, canonical(f, it->second));
    }
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(ErrorCode::InvalidArgument, "cannot open config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg, bool with_output) {
    std::string out;
    for (const auto& f : schema()) {
        if (f.key == "out" && !with_output)
            continue;
        if (const auto v = f.get(cfg))
            out += f.key + " = " + *v + "\n";
    }
    return out;
}

std::string normalize_config(const std::string& text) {
    const auto pairs = read_pairs(text);
    std::string out;
    for (const auto& f : schema()) {
        const auto it = pairs.find(f.key);
        std::optional<std::string> value;
        if (it != pairs.end())
            value = canonical(f, it->second);
        else
            value = f.default_value;
        if (!value || (f.omit_value && *value == *f.omit_value))
            continue;
        out += f.key + " = " + *value + "\n";
    }
    return out;
}

void validate_config(const RunConfig& cfg) {
    static const std::vector<std::string> commands = {"fano",        "optimize", "sweep-length", "wigner",
                                                      "photon-dist", "design",   "reproduce"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end())
        bad("command", "unknown command '" + cfg.command + "'");
    if (cfg.parallel < 1)
        bad("parallel", "must be >= 1");
    if (cfg.window && *cfg.window != "auto" && *cfg.window != "mean" && *cfg.window != "explicit")
        bad("window", "expected auto, mean or explicit");
    if (cfg.resolution && *cfg.resolution < 2)
        bad("resolution", "must be >= 2");
    if (cfg.kz_points && *cfg.kz_points < 1)
        bad("kz_points", "must be >= 1");
    if (cfg.max_iterations && *cfg.max_iterations < 1)
        bad("max_iterations", "must be >= 1");
    for (const auto& [name, v] : {std::pair{"tol_simplex", cfg.tol_simplex}, std::pair{"tol_length", cfg.tol_length},
                                  std::pair{"tol_truncation", cfg.tol_truncation}})
        if (v && !(*v > 0.0))
            bad(name, "must be > 0");
}

} // namespace dks::app
