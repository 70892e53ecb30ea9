// Copyright 2026 The cqtsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "cli_internal.hpp"
#include "cqt/reference_data.hpp"
#include "cqt/source_fit.hpp"

namespace cqt::cli {

namespace {

std::string format_real(double v, bool full) {
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, full ? "%.17g" : "%.4g", v);
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

std::string csv_cell(const Cell &c, bool full) {
    struct V {
        bool full;
        std::string operator()(Null) const { return ""; }
        std::string operator()(double v) const { return format_real(v, full); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(const std::string &v) const {
            if (v.find_first_of(",\"\n") == std::string::npos) {
                return v;
            }
            std::string q = "\"";
            for (char ch : v) {
                q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            }
            return q + "\"";
        }
    };
    return std::visit(V{full}, c);
}

nlohmann::ordered_json json_cell(const Cell &c, bool full) {
    struct V {
        bool full;
        nlohmann::ordered_json operator()(Null) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) {
                return nullptr;
            }
            return std::stod(format_real(v, full));
        }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(bool v) const { return v; }
        nlohmann::ordered_json operator()(const std::string &v) const { return v; }
    };
    return std::visit(V{full}, c);
}

std::string lower(std::string s) {
    for (char &c : s) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return s;
}

}  // namespace

std::string render(const Table &t, const OutputOptions &opts) {
    std::ostringstream os;
    if (opts.format == Format::Csv) {
        os << "# cqtsim-schema: " << t.command << "/" << t.schema_version << "\n";
        for (const auto &[k, v] : t.notes) {
            os << "# " << k << "=" << csv_cell(v, opts.full_precision) << "\n";
        }
        for (size_t i = 0; i < t.columns.size(); i++) {
            os << (i ? "," : "") << t.columns[i];
        }
        os << "\n";
        for (const auto &row : t.rows) {
            for (size_t i = 0; i < row.size(); i++) {
                os << (i ? "," : "") << csv_cell(row[i], opts.full_precision);
            }
            os << "\n";
        }
        return os.str();
    }
    nlohmann::ordered_json j;
    j["schema"] = "cqtsim/" + t.command + "/" + std::to_string(t.schema_version);
    for (const auto &[k, v] : t.notes) {
        j[k] = json_cell(v, opts.full_precision);
    }
    auto rows = nlohmann::ordered_json::array();
    for (const auto &row : t.rows) {
        nlohmann::ordered_json r;
        for (size_t i = 0; i < row.size() && i < t.columns.size(); i++) {
            r[t.columns[i]] = json_cell(row[i], opts.full_precision);
        }
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

std::string emit(const Table &table, const OutputOptions &opts, std::ostream &out) {
    const std::string text = render(table, opts);
    std::filesystem::path path;
    if (!opts.out.empty()) {
        path = opts.out;
    } else if (const char *dir = std::getenv("CQTSIM_OUT_DIR"); dir != nullptr && *dir != '\0') {
        path = std::filesystem::path(dir) / (table.command + (opts.format == Format::Csv ? ".csv" : ".json"));
    }
    if (path.empty() || path == "-") {
        out << text;
        return "-";
    }
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return path.string();
}

double parse_real(const std::string &raw) {
    std::string s = raw;
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    auto one = [&](const std::string &part) {
        try {
            size_t used = 0;
            double v = std::stod(part, &used);
            if (used != part.size() || !std::isfinite(v)) {
                throw std::invalid_argument(part);
            }
            return v;
        } catch (const std::exception &) {
            throw UsageError("not a number: '" + raw + "'");
        }
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
        double den = one(s.substr(slash + 1));
        if (den == 0.0) {
            throw UsageError("zero denominator in '" + raw + "'");
        }
        return one(s.substr(0, slash)) / den;
    }
    return one(s);
}

std::vector<double> parse_real_list(const std::string &s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        out.push_back(parse_real(item));
    }
    return out;
}

Jones parse_input(const std::string &spec) {
    try {
        return qubit::from_label(spec);
    } catch (const std::invalid_argument &) {
        throw UsageError("unknown input state '" + spec + "'");
    }
}

Roles parse_roles(const std::string &spec) {
    auto v = parse_real_list(spec);
    if (v.size() != 3) {
        throw UsageError("roles need three modes: sender,receiver,controller");
    }
    Roles r{static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2])};
    try {
        r.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    return r;
}

ChannelVariant parse_channel(const std::string &s) {
    std::string l = lower(s);
    if (l == "g1") {
        return ChannelVariant::G1;
    }
    if (l == "g2") {
        return ChannelVariant::G2;
    }
    if (l == "ref" || l == "reference") {
        return ChannelVariant::UncontrolledReference;
    }
    throw UsageError("unknown channel '" + s + "'");
}

CharlieAction parse_action(const std::string &s) {
    std::string l = lower(s);
    if (l == "allow") {
        return CharlieAction::Allow;
    }
    if (l == "deny") {
        return CharlieAction::Deny;
    }
    if (l == "none") {
        return CharlieAction::None;
    }
    throw UsageError("unknown action '" + s + "'");
}

Jones resolve_input(const RunOptions &o) {
    if (o.input_theta_deg || o.input_phi_deg) {
        const double deg = std::numbers::pi / 180.0;
        return qubit::bloch(o.input_theta_deg.value_or(0.0) * deg, o.input_phi_deg.value_or(0.0) * deg);
    }
    return parse_input(o.input);
}

ProtocolConfig make_protocol_config(const RunOptions &o, ChannelVariant variant) {
    ProtocolConfig c;
    c.variant = variant;
    if (o.action.empty()) {
        c.action = variant == ChannelVariant::UncontrolledReference ? CharlieAction::None : CharlieAction::Allow;
    } else {
        c.action = parse_action(o.action);
    }
    c.input = InputQubit::from_jones(resolve_input(o));
    c.roles = parse_roles(o.roles);
    if (!o.ideal) {
        c.source = params_for_ratio(o.ratio.value_or(kFittedRatio), o.kappa);
    }
    c.pbs_epsilon = o.eps.value_or(o.ideal ? 0.0 : kPbsReflectionH);
    try {
        c.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    } catch (const std::domain_error &e) {
        throw UsageError(e.what());
    }
    return c;
}

}  // namespace cqt::cli
