#include "oclp/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oclp/numfmt.hpp"

namespace oclp {

namespace {

constexpr const char* kTableHeader = "state,action,next_state,cost";

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(ch);
        }
    }
    out.push_back(std::move(field));
    return out;
}

}  // namespace

FiniteControlSystem parse_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<TableRow> rows;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line_no == 1) {
            if (line != kTableHeader)
                throw Error(ErrorKind::ParseError,
                            "line 1: expected header '" + std::string(kTableHeader) + "'");
            continue;
        }
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != 4)
            throw Error(ErrorKind::ParseError,
                        "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                            std::to_string(fields.size()));
        auto cost = parse_double(fields[3]);
        if (!cost)
            throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) +
                                                   ": cost '" + fields[3] + "' is not a number");
        rows.push_back({fields[0], fields[1], fields[2], *cost});
    }
    if (rows.empty()) throw Error(ErrorKind::EmptyInput, "no data rows");
    return build_from_table(rows);
}

FiniteControlSystem load_table(const std::string& path) {
    return parse_table(read_text_file(path));
}

std::string table_to_csv(const FiniteControlSystem& system) {
    std::string out = std::string(kTableHeader) + "\n";
    for (int p = 0; p < system.num_pairs(); ++p) {
        auto ref = system.pair(p);
        out += system.state_label(ref.state) + "," + system.action_label(ref.state, ref.action) +
               "," + system.state_label(system.pair_next_state(p)) + "," +
               format_double(system.pair_cost(p)) + "\n";
    }
    return out;
}

std::string measure_to_csv(const FiniteControlSystem& system, const OccupationalMeasure& gamma) {
    if (gamma.size() != system.num_pairs())
        throw Error(ErrorKind::BasisMismatch, "measure not on this system's pair index");
    std::string out = "pair_id,state,action,weight\n";
    for (int p = 0; p < system.num_pairs(); ++p) {
        auto ref = system.pair(p);
        out += std::to_string(p) + "," + system.state_label(ref.state) + "," +
               system.action_label(ref.state, ref.action) + "," +
               format_double(gamma.weights[p]) + "\n";
    }
    return out;
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::string out = "parameter,value,reference,abs_error\n";
    for (const auto& p : sweep.points) {
        out += format_double(p.parameter) + "," + format_double(p.value) + "," +
               format_double(p.reference) + "," + format_double(p.abs_error) + "\n";
    }
    return out;
}

nlohmann::ordered_json report_to_json(const VerificationReport& report) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& check : report.checks) {
        arr.push_back({{"quantity", check.quantity},
                       {"value", check.value},
                       {"bound", check.bound},
                       {"pass", check.pass}});
    }
    return arr;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::BadConfig, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error(ErrorKind::BadConfig, "failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::BadConfig, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace oclp
