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

#ifndef CQT_CLI_INTERNAL_HPP
#define CQT_CLI_INTERNAL_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cqt/protocol.hpp"

namespace cqt::cli {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Format { Csv, Json };

struct OutputOptions {
    std::string out;  // empty: CQTSIM_OUT_DIR/<command>.<ext>, else stdout
    Format format = Format::Csv;
    bool full_precision = false;
};

struct Null {};
using Cell = std::variant<Null, double, long long, bool, std::string>;

struct Table {
    std::string command;
    int schema_version = 1;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Key/value annotations: CSV comment lines, JSON top-level fields.
    std::vector<std::pair<std::string, Cell>> notes;
};

std::string render(const Table &table, const OutputOptions &opts);
/// Writes to the resolved destination; returns the path or "-" for `out`.
std::string emit(const Table &table, const OutputOptions &opts, std::ostream &out);

// Value parsers shared by commands and config files.
double parse_real(const std::string &s);  // accepts "a/b"
std::vector<double> parse_real_list(const std::string &s);
Jones parse_input(const std::string &spec);
Roles parse_roles(const std::string &spec);
ChannelVariant parse_channel(const std::string &s);
CharlieAction parse_action(const std::string &s);

struct RunOptions {
    std::string channel = "g1";
    double p = 0.5;
    std::string action;  // default: allow for GHZ channels, none for ref
    std::string input = "plus";
    std::optional<double> input_theta_deg;
    std::optional<double> input_phi_deg;
    bool ideal = false;
    double kappa = 0.1;  // the larger of the two strengths
    std::optional<double> ratio;
    std::optional<double> eps;
    std::string roles = "1,2,3";
    double weight = 0.0;
    std::optional<double> exposure;
    int resamples = 10000;
    std::string reproduce;
};

ProtocolConfig make_protocol_config(const RunOptions &o, ChannelVariant variant);
Jones resolve_input(const RunOptions &o);

}  // namespace cqt::cli

#endif
