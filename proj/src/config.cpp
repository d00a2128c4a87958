#include "pqlab/config.hpp"
#include "pqlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pqlab {

using nlohmann::json;

std::vector<double> SampleRange::points() const {
    if (count < 1) throw DomainError("SampleRange: count must be >= 1");
    std::vector<double> xs(static_cast<size_t>(count));
    if (count == 1) {
        xs[0] = lo;
        return xs;
    }
    const double step = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) xs[static_cast<size_t>(i)] = lo + i * step;
    xs.back() = hi;  // guard the endpoint against accumulated rounding
    return xs;
}

const std::map<std::string, double>& default_tolerances() {
    static const std::map<std::string, double> defaults = {
        {"eigen_tol", 1e-8},    {"grad_tol", 1e-8},  {"endpoint_tol", 1e-10},
        {"residual_tol", -1.0}, {"curve_tol", 1e-11},
    };
    return defaults;
}

RunConfig::RunConfig() : tolerances(default_tolerances()) {}

void RunConfig::validate() const {
    if (!(q > 1.0)) throw DomainError("config: q > 1 required");
    if (!(p > q)) throw DomainError("config: p > q required");
    if (grid_n < 3) throw DomainError("config: grid_n >= 3 required");
    if (alpha_range.count < 1) throw DomainError("config: alpha_range.count >= 1 required");
    if (beta_range.count < 1) throw DomainError("config: beta_range.count >= 1 required");
    if (alpha_range.lo > alpha_range.hi)
        throw DomainError("config: alpha_range.lo <= alpha_range.hi required");
    if (beta_range.lo > beta_range.hi)
        throw DomainError("config: beta_range.lo <= beta_range.hi required");
    if (output_dir.empty()) throw DomainError("config: output_dir must not be empty");
    for (const auto& [name, value] : tolerances) {
        if (!default_tolerances().count(name))
            throw DomainError("config: unknown tolerance '" + name + "'");
        if (name == "residual_tol") {
            // negative selects the scale-aware automatic limit; zero would
            // reject everything
            if (value == 0.0) throw DomainError("config: tolerance 'residual_tol' must be nonzero");
        } else if (!(value > 0.0)) {
            throw DomainError("config: tolerance '" + name + "' must be > 0");
        }
    }
}

double RunConfig::tol(const std::string& name) const {
    auto it = tolerances.find(name);
    if (it == tolerances.end()) throw DomainError("config: unknown tolerance '" + name + "'");
    return it->second;
}

namespace {

[[noreturn]] void bad_key(const std::string& origin, const std::string& key) {
    throw DomainError(origin + ": unknown key '" + key + "'");
}

double want_number(const json& v, const std::string& origin, const std::string& key) {
    if (!v.is_number()) throw DomainError(origin + ": '" + key + "' must be a number");
    return v.get<double>();
}

int want_int(const json& v, const std::string& origin, const std::string& key) {
    if (!v.is_number_integer()) throw DomainError(origin + ": '" + key + "' must be an integer");
    return v.get<int>();
}

std::string want_string(const json& v, const std::string& origin, const std::string& key) {
    if (!v.is_string()) throw DomainError(origin + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

SampleRange parse_range(const json& v, const std::string& origin, const std::string& key) {
    if (!v.is_object()) throw DomainError(origin + ": '" + key + "' must be an object");
    SampleRange r;
    for (const auto& [k, val] : v.items()) {
        if (k == "lo")
            r.lo = want_number(val, origin, key + ".lo");
        else if (k == "hi")
            r.hi = want_number(val, origin, key + ".hi");
        else if (k == "count")
            r.count = want_int(val, origin, key + ".count");
        else
            bad_key(origin, key + "." + k);
    }
    return r;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DomainError(origin + ": " + e.what());
    }
    if (!j.is_object()) throw DomainError(origin + ": config must be a JSON object");
    RunConfig cfg;
    for (const auto& [key, v] : j.items()) {
        if (key == "p")
            cfg.p = want_number(v, origin, key);
        else if (key == "q")
            cfg.q = want_number(v, origin, key);
        else if (key == "grid_n")
            cfg.grid_n = want_int(v, origin, key);
        else if (key == "f")
            cfg.f_spec = want_string(v, origin, key);
        else if (key == "alpha_range")
            cfg.alpha_range = parse_range(v, origin, key);
        else if (key == "beta_range")
            cfg.beta_range = parse_range(v, origin, key);
        else if (key == "seed") {
            if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                           v.get<long long>() < 0))
                throw DomainError(origin + ": 'seed' must be a nonnegative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else if (key == "tolerances") {
            if (!v.is_object()) throw DomainError(origin + ": 'tolerances' must be an object");
            for (const auto& [name, val] : v.items()) {
                if (!default_tolerances().count(name))
                    bad_key(origin, "tolerances." + name);
                cfg.tolerances[name] = want_number(val, origin, "tolerances." + name);
            }
        } else if (key == "output_dir")
            cfg.output_dir = want_string(v, origin, key);
        else
            bad_key(origin, key);
    }
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw DomainError("override '" + assignment + "' is not of the form key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string value = assignment.substr(eq + 1);
    const auto as_number = [&](const char* what) {
        try {
            size_t used = 0;
            const double x = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument("");
            return x;
        } catch (const std::exception&) {
            throw DomainError("override " + key + ": '" + value + "' is not a " + what);
        }
    };
    const auto as_int = [&]() {
        try {
            size_t used = 0;
            const int x = std::stoi(value, &used);
            if (used != value.size()) throw std::invalid_argument("");
            return x;
        } catch (const std::exception&) {
            throw DomainError("override " + key + ": '" + value + "' is not an integer");
        }
    };
    if (key == "p")
        cfg.p = as_number("number");
    else if (key == "q")
        cfg.q = as_number("number");
    else if (key == "grid_n")
        cfg.grid_n = as_int();
    else if (key == "f")
        cfg.f_spec = value;
    else if (key == "seed") {
        try {
            size_t used = 0;
            // stoull would wrap a negative input instead of failing
            if (value.find('-') != std::string::npos) throw std::invalid_argument("");
            cfg.seed = std::stoull(value, &used);
            if (used != value.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw DomainError("override seed: '" + value + "' is not a nonnegative integer");
        }
    } else if (key == "output_dir")
        cfg.output_dir = value;
    else if (key == "alpha_range.lo")
        cfg.alpha_range.lo = as_number("number");
    else if (key == "alpha_range.hi")
        cfg.alpha_range.hi = as_number("number");
    else if (key == "alpha_range.count")
        cfg.alpha_range.count = as_int();
    else if (key == "beta_range.lo")
        cfg.beta_range.lo = as_number("number");
    else if (key == "beta_range.hi")
        cfg.beta_range.hi = as_number("number");
    else if (key == "beta_range.count")
        cfg.beta_range.count = as_int();
    else if (key.rfind("tolerances.", 0) == 0) {
        const std::string name = key.substr(std::string("tolerances.").size());
        if (!default_tolerances().count(name)) bad_key("override", key);
        cfg.tolerances[name] = as_number("number");
    } else
        bad_key("override", key);
}

GridFunction make_source(const std::string& f_spec, Grid1D grid) {
    const auto colon = f_spec.find(':');
    const std::string tag = f_spec.substr(0, colon == std::string::npos ? f_spec.size() : colon);
    const std::string rest = colon == std::string::npos ? "" : f_spec.substr(colon + 1);
    if (tag == "const") {
        double c = 0.0;
        try {
            size_t used = 0;
            c = std::stod(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw DomainError("f-spec 'const:' needs one number, got '" + rest + "'");
        }
        return GridFunction::sample(grid, [c](double) { return c; });
    }
    if (tag == "bump") {
        double prm[3];
        std::istringstream ss(rest);
        std::string part;
        int got = 0;
        while (std::getline(ss, part, ',')) {
            if (got == 3) break;
            try {
                size_t used = 0;
                prm[got] = std::stod(part, &used);
                if (used != part.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw DomainError("f-spec 'bump:' has a malformed number '" + part + "'");
            }
            ++got;
        }
        if (got != 3 || ss.rdbuf()->in_avail() > 0)
            throw DomainError("f-spec 'bump:' needs center,width,height, got '" + rest + "'");
        const double center = prm[0], width = prm[1], height = prm[2];
        if (!(width > 0.0)) throw DomainError("f-spec 'bump:' needs width > 0");
        return GridFunction::sample(grid, [=](double x) {
            const double t = (x - center) / width;
            if (std::fabs(t) >= 1.0) return 0.0;
            return height * (1.0 + std::cos(M_PI * t)) / 2.0;
        });
    }
    if (tag == "file") {
        std::ifstream in(rest);
        if (!in) throw IoError("cannot open f-spec file: " + rest);
        std::vector<double> vals;
        double v;
        while (in >> v) vals.push_back(v);
        if (!in.eof()) throw DomainError("f-spec file has non-numeric content: " + rest);
        if (static_cast<int>(vals.size()) != grid.n())
            throw DomainError("f-spec file " + rest + " holds " + std::to_string(vals.size()) +
                              " values, grid needs " + std::to_string(grid.n()));
        return GridFunction(grid, std::move(vals));
    }
    throw DomainError("unknown f-spec '" + f_spec + "' (expect const:, bump:, or file:)");
}

std::string canonical_json(const RunConfig& cfg) {
    json j;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    j["grid_n"] = cfg.grid_n;
    j["f"] = cfg.f_spec;
    j["alpha_range"] = {{"lo", cfg.alpha_range.lo},
                        {"hi", cfg.alpha_range.hi},
                        {"count", cfg.alpha_range.count}};
    j["beta_range"] = {{"lo", cfg.beta_range.lo},
                       {"hi", cfg.beta_range.hi},
                       {"count", cfg.beta_range.count}};
    j["seed"] = cfg.seed;
    j["tolerances"] = cfg.tolerances;
    j["output_dir"] = cfg.output_dir;
    return j.dump();
}

std::uint64_t config_hash(const RunConfig& cfg) { return fnv1a64(canonical_json(cfg)); }

}  // namespace pqlab
