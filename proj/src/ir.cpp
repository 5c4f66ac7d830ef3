// Copyright 2026 The qstack developers
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

#include "qstack/ir.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <set>
#include <stdexcept>

namespace qstack {

namespace {

struct OpcodeInfo {
    Opcode op;
    std::string_view name;
    int num_qubits;
    bool has_angle;
};

constexpr OpcodeInfo kOpcodeTable[kNumOpcodes] = {
    {Opcode::PREP_Z, "prep_z", 1, false},
    {Opcode::X, "x", 1, false},
    {Opcode::Y, "y", 1, false},
    {Opcode::Z, "z", 1, false},
    {Opcode::H, "h", 1, false},
    {Opcode::S, "s", 1, false},
    {Opcode::SDAG, "sdag", 1, false},
    {Opcode::T, "t", 1, false},
    {Opcode::TDAG, "tdag", 1, false},
    {Opcode::RX, "rx", 1, true},
    {Opcode::RY, "ry", 1, true},
    {Opcode::RZ, "rz", 1, true},
    {Opcode::CNOT, "cnot", 2, false},
    {Opcode::CZ, "cz", 2, false},
    {Opcode::SWAP, "swap", 2, false},
    {Opcode::MEASURE_Z, "measure", 1, false},
};

const OpcodeInfo &info(Opcode op) { return kOpcodeTable[static_cast<int>(op)]; }

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string_view opcode_name(Opcode op) { return info(op).name; }

std::optional<Opcode> opcode_from_name(std::string_view name) {
    std::string lower = to_lower(name);
    for (const auto &entry : kOpcodeTable) {
        if (entry.name == lower) {
            return entry.op;
        }
    }
    return std::nullopt;
}

int opcode_num_qubits(Opcode op) { return info(op).num_qubits; }

bool opcode_has_angle(Opcode op) { return info(op).has_angle; }

bool opcode_is_unitary(Opcode op) {
    return op != Opcode::PREP_Z && op != Opcode::MEASURE_Z;
}

Gate::Gate(Opcode op, std::vector<int> qs, double theta)
    : opcode(op), qubits(std::move(qs)), angle(theta) {
    if (static_cast<int>(qubits.size()) != opcode_num_qubits(op)) {
        throw std::invalid_argument("gate arity mismatch for " +
                                    std::string(opcode_name(op)));
    }
    for (int q : qubits) {
        if (q < 0) {
            throw std::invalid_argument("negative qubit index");
        }
    }
    if (qubits.size() == 2 && qubits[0] == qubits[1]) {
        throw std::invalid_argument("duplicate qubit within gate");
    }
    if (!opcode_has_angle(op)) {
        angle = 0.0;
    } else if (!std::isfinite(angle)) {
        throw std::invalid_argument("non-finite rotation angle");
    }
}

Gate gate1(Opcode op, int q) { return Gate(op, {q}); }
Gate gate1(Opcode op, int q, double angle) { return Gate(op, {q}, angle); }
Gate gate2(Opcode op, int a, int b) { return Gate(op, {a, b}); }

namespace {

void check_bundle(const Bundle &bundle, int num_qubits) {
    if (bundle.gates.empty()) {
        throw std::invalid_argument("empty bundle");
    }
    std::set<int> used;
    for (const Gate &g : bundle.gates) {
        for (int q : g.qubits) {
            if (q >= num_qubits) {
                throw std::invalid_argument("qubit index out of range");
            }
            if (!used.insert(q).second) {
                throw std::invalid_argument("duplicate qubit in bundle");
            }
        }
    }
}

} // namespace

void append(Circuit &circuit, Gate gate) {
    Bundle b;
    b.gates.push_back(std::move(gate));
    append(circuit, std::move(b));
}

void append(Circuit &circuit, Bundle bundle) {
    check_bundle(bundle, circuit.num_qubits);
    circuit.bundles.push_back(std::move(bundle));
}

std::optional<std::string> validate(const Circuit &circuit) {
    if (circuit.num_qubits < 1) {
        return "circuit must have at least one qubit";
    }
    for (const Bundle &b : circuit.bundles) {
        try {
            check_bundle(b, circuit.num_qubits);
        } catch (const std::invalid_argument &e) {
            return std::string(e.what());
        }
    }
    return std::nullopt;
}

std::string_view source_error_kind_name(SourceErrorKind kind) {
    switch (kind) {
    case SourceErrorKind::UNKNOWN_OPCODE: return "UNKNOWN_OPCODE";
    case SourceErrorKind::BAD_ARITY: return "BAD_ARITY";
    case SourceErrorKind::INDEX_OUT_OF_RANGE: return "INDEX_OUT_OF_RANGE";
    case SourceErrorKind::DUPLICATE_QUBIT_IN_BUNDLE: return "DUPLICATE_QUBIT_IN_BUNDLE";
    case SourceErrorKind::MALFORMED_NUMBER: return "MALFORMED_NUMBER";
    case SourceErrorKind::MISSING_HEADER: return "MISSING_HEADER";
    }
    return "UNKNOWN";
}

namespace {

// Recursive-descent-ish line parser. Columns are 1-based byte offsets into
// the original line; comment stripping only removes a suffix, so positions
// stay valid.
class Parser {
public:
    explicit Parser(std::string_view source) {
        size_t pos = 0;
        int number = 1;
        while (pos <= source.size()) {
            size_t nl = source.find('\n', pos);
            std::string_view raw = (nl == std::string_view::npos)
                                       ? source.substr(pos)
                                       : source.substr(pos, nl - pos);
            if (!raw.empty() && raw.back() == '\r') {
                raw.remove_suffix(1);
            }
            size_t hash = raw.find('#');
            if (hash != std::string_view::npos) {
                raw = raw.substr(0, hash);
            }
            lines_.push_back({std::string(raw), number});
            ++number;
            if (nl == std::string_view::npos) {
                break;
            }
            pos = nl + 1;
        }
    }

    ParseResult run() {
        size_t li = 0;
        if (!parse_version(li) || !parse_qubits(li)) {
            return {std::nullopt, err_};
        }
        for (; li < lines_.size(); ++li) {
            const std::string &text = lines_[li].text;
            size_t pos = skip_ws(text, 0);
            if (pos >= text.size()) {
                continue;
            }
            Bundle bundle;
            if (text[pos] == '{') {
                if (!parse_bundle(text, pos, lines_[li].number, &bundle)) {
                    return {std::nullopt, err_};
                }
            } else {
                GateSpan g;
                size_t end = text.size();
                if (!parse_gate(text, pos, end, lines_[li].number, &g)) {
                    return {std::nullopt, err_};
                }
                size_t rest = skip_ws(text, g.end);
                if (rest < end) {
                    fail(lines_[li].number, rest + 1, SourceErrorKind::BAD_ARITY,
                         "unexpected trailing text");
                    return {std::nullopt, err_};
                }
                bundle.gates.push_back(make_gate(g));
            }
            circuit_.bundles.push_back(std::move(bundle));
        }
        return {std::move(circuit_), std::nullopt};
    }

private:
    struct Line {
        std::string text;
        int number;
    };

    struct Operand {
        int qubit = 0;
        int column = 0;
    };

    struct GateSpan {
        Opcode op = Opcode::X;
        std::vector<Operand> operands;
        double angle = 0.0;
        size_t end = 0; // position just past the gate text
    };

    std::vector<Line> lines_;
    Circuit circuit_;
    std::optional<SourceError> err_;

    bool fail(int line, int column, SourceErrorKind kind, std::string message) {
        err_ = SourceError{line, column, kind, std::move(message)};
        return false;
    }

    static size_t skip_ws(const std::string &s, size_t pos) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
        return pos;
    }

    static bool is_word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    // Advances li past blank lines; false when no content remains.
    bool next_content(size_t &li) {
        while (li < lines_.size() &&
               skip_ws(lines_[li].text, 0) >= lines_[li].text.size()) {
            ++li;
        }
        return li < lines_.size();
    }

    int last_line_number() const {
        return lines_.empty() ? 1 : lines_.back().number;
    }

    bool parse_version(size_t &li) {
        if (!next_content(li)) {
            return fail(last_line_number(), 1, SourceErrorKind::MISSING_HEADER,
                        "missing 'version' header");
        }
        const std::string &text = lines_[li].text;
        int line = lines_[li].number;
        size_t pos = skip_ws(text, 0);
        size_t word_end = pos;
        while (word_end < text.size() && is_word_char(text[word_end])) {
            ++word_end;
        }
        if (to_lower(text.substr(pos, word_end - pos)) != "version") {
            return fail(line, pos + 1, SourceErrorKind::MISSING_HEADER,
                        "expected 'version' header");
        }
        size_t vpos = skip_ws(text, word_end);
        size_t vend = vpos;
        while (vend < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[vend]))) {
            ++vend;
        }
        if (vpos == vend) {
            return fail(line, vpos + 1, SourceErrorKind::MISSING_HEADER,
                        "missing version value");
        }
        if (skip_ws(text, vend) < text.size()) {
            return fail(line, skip_ws(text, vend) + 1, SourceErrorKind::MISSING_HEADER,
                        "unexpected text after version");
        }
        circuit_.version = text.substr(vpos, vend - vpos);
        ++li;
        return true;
    }

    bool parse_qubits(size_t &li) {
        if (!next_content(li)) {
            return fail(last_line_number(), 1, SourceErrorKind::MISSING_HEADER,
                        "missing 'qubits' header");
        }
        const std::string &text = lines_[li].text;
        int line = lines_[li].number;
        size_t pos = skip_ws(text, 0);
        size_t word_end = pos;
        while (word_end < text.size() && is_word_char(text[word_end])) {
            ++word_end;
        }
        if (to_lower(text.substr(pos, word_end - pos)) != "qubits") {
            return fail(line, pos + 1, SourceErrorKind::MISSING_HEADER,
                        "expected 'qubits' header");
        }
        size_t npos = skip_ws(text, word_end);
        size_t nend = npos;
        while (nend < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[nend]))) {
            ++nend;
        }
        if (npos == nend) {
            return fail(line, npos + 1, SourceErrorKind::MISSING_HEADER,
                        "missing qubit count");
        }
        long value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + npos, text.data() + nend, value);
        if (ec != std::errc() || ptr != text.data() + nend) {
            return fail(line, npos + 1, SourceErrorKind::MALFORMED_NUMBER,
                        "qubit count is not an integer");
        }
        if (value < 1 || value > 1000000) {
            return fail(line, npos + 1, SourceErrorKind::MALFORMED_NUMBER,
                        "qubit count must be a positive integer");
        }
        if (skip_ws(text, nend) < text.size()) {
            return fail(line, skip_ws(text, nend) + 1, SourceErrorKind::MISSING_HEADER,
                        "unexpected text after qubit count");
        }
        circuit_.num_qubits = static_cast<int>(value);
        ++li;
        return true;
    }

    bool parse_bundle(const std::string &text, size_t open, int line, Bundle *out) {
        size_t close = text.find('}', open + 1);
        if (close == std::string::npos) {
            return fail(line, open + 1, SourceErrorKind::BAD_ARITY,
                        "unterminated bundle");
        }
        size_t rest = skip_ws(text, close + 1);
        if (rest < text.size()) {
            return fail(line, rest + 1, SourceErrorKind::BAD_ARITY,
                        "unexpected text after bundle");
        }
        std::set<int> used;
        size_t seg_start = open + 1;
        while (true) {
            size_t bar = text.find('|', seg_start);
            size_t seg_end = (bar == std::string::npos || bar > close) ? close : bar;
            size_t pos = skip_ws(text, seg_start);
            if (pos >= seg_end) {
                return fail(line, seg_start + 1, SourceErrorKind::BAD_ARITY,
                            "empty bundle section");
            }
            GateSpan g;
            if (!parse_gate(text, pos, seg_end, line, &g)) {
                return false;
            }
            size_t tail = skip_ws(text, g.end);
            if (tail < seg_end) {
                return fail(line, tail + 1, SourceErrorKind::BAD_ARITY,
                            "unexpected trailing text");
            }
            for (const Operand &operand : g.operands) {
                if (!used.insert(operand.qubit).second) {
                    return fail(line, operand.column,
                                SourceErrorKind::DUPLICATE_QUBIT_IN_BUNDLE,
                                "qubit used twice in one bundle");
                }
            }
            out->gates.push_back(make_gate(g));
            if (seg_end == close) {
                break;
            }
            seg_start = seg_end + 1;
        }
        return true;
    }

    // Parses a single gate from [pos, limit). On success g->end points past
    // the last consumed character.
    bool parse_gate(const std::string &text, size_t pos, size_t limit, int line,
                    GateSpan *g) {
        pos = skip_ws(text, pos);
        size_t word_start = pos;
        while (pos < limit && is_word_char(text[pos])) {
            ++pos;
        }
        if (pos == word_start) {
            return fail(line, word_start + 1, SourceErrorKind::UNKNOWN_OPCODE,
                        "expected an instruction");
        }
        std::string word = text.substr(word_start, pos - word_start);
        auto op = opcode_from_name(word);
        if (!op) {
            return fail(line, word_start + 1, SourceErrorKind::UNKNOWN_OPCODE,
                        "unknown opcode '" + word + "'");
        }
        g->op = *op;
        int arity = opcode_num_qubits(*op);
        for (int k = 0; k < arity; ++k) {
            if (k > 0 && !consume_comma(text, pos, limit, line)) {
                return false;
            }
            Operand operand;
            if (!parse_qubit_ref(text, pos, limit, line, &operand)) {
                return false;
            }
            g->operands.push_back(operand);
        }
        if (opcode_has_angle(*op)) {
            pos = skip_ws(text, pos);
            if (pos >= limit || text[pos] != ',') {
                return fail(line, pos + 1, SourceErrorKind::BAD_ARITY,
                            std::string(opcode_name(*op)) + " requires an angle operand");
            }
            ++pos;
            if (!parse_angle(text, pos, limit, line, &g->angle)) {
                return false;
            }
        }
        size_t after = skip_ws(text, pos);
        if (after < limit && text[after] == ',') {
            return fail(line, after + 1, SourceErrorKind::BAD_ARITY,
                        "too many operands for " + std::string(opcode_name(*op)));
        }
        if (g->operands.size() == 2 &&
            g->operands[0].qubit == g->operands[1].qubit) {
            return fail(line, g->operands[1].column,
                        SourceErrorKind::DUPLICATE_QUBIT_IN_BUNDLE,
                        "duplicate qubit within gate");
        }
        g->end = pos;
        return true;
    }

    bool consume_comma(const std::string &text, size_t &pos, size_t limit, int line) {
        pos = skip_ws(text, pos);
        if (pos >= limit || text[pos] != ',') {
            return fail(line, pos + 1, SourceErrorKind::BAD_ARITY,
                        "expected ',' between operands");
        }
        ++pos;
        return true;
    }

    bool parse_qubit_ref(const std::string &text, size_t &pos, size_t limit,
                         int line, Operand *operand) {
        pos = skip_ws(text, pos);
        if (pos + 1 >= limit || std::tolower(static_cast<unsigned char>(text[pos])) != 'q' ||
            text[pos + 1] != '[') {
            return fail(line, pos + 1, SourceErrorKind::BAD_ARITY,
                        "expected qubit operand like q[0]");
        }
        size_t digits = pos + 2;
        size_t dend = digits;
        while (dend < limit && std::isdigit(static_cast<unsigned char>(text[dend]))) {
            ++dend;
        }
        if (dend == digits) {
            return fail(line, digits + 1, SourceErrorKind::MALFORMED_NUMBER,
                        "expected a qubit index");
        }
        long value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + digits, text.data() + dend, value);
        if (ec != std::errc()) {
            return fail(line, digits + 1, SourceErrorKind::MALFORMED_NUMBER,
                        "qubit index out of representable range");
        }
        (void)ptr;
        if (dend >= limit || text[dend] != ']') {
            return fail(line, dend + 1, SourceErrorKind::BAD_ARITY, "expected ']'");
        }
        if (value >= circuit_.num_qubits) {
            return fail(line, digits + 1, SourceErrorKind::INDEX_OUT_OF_RANGE,
                        "qubit index " + std::to_string(value) + " exceeds declared count " +
                            std::to_string(circuit_.num_qubits));
        }
        operand->qubit = static_cast<int>(value);
        operand->column = static_cast<int>(digits + 1);
        pos = dend + 1;
        return true;
    }

    bool parse_angle(const std::string &text, size_t &pos, size_t limit, int line,
                     double *angle) {
        pos = skip_ws(text, pos);
        size_t start = pos;
        while (pos < limit && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != ',' && text[pos] != '|' && text[pos] != '}') {
            ++pos;
        }
        if (start == pos) {
            return fail(line, start + 1, SourceErrorKind::BAD_ARITY,
                        "missing angle value");
        }
        std::string token = text.substr(start, pos - start);
        if (!angle_from_token(token, angle)) {
            return fail(line, start + 1, SourceErrorKind::MALFORMED_NUMBER,
                        "malformed angle '" + token + "'");
        }
        return true;
    }

    static bool angle_from_token(const std::string &token, double *angle) {
        std::string t = to_lower(token);
        double sign = 1.0;
        size_t p = 0;
        if (p < t.size() && (t[p] == '+' || t[p] == '-')) {
            sign = (t[p] == '-') ? -1.0 : 1.0;
            ++p;
        }
        if (t.compare(p, 2, "pi") == 0) {
            p += 2;
            double denom = 1.0;
            if (p < t.size()) {
                if (t[p] != '/') {
                    return false;
                }
                std::string rest = t.substr(p + 1);
                if (rest.empty() || !parse_full_double(rest, &denom) || denom <= 0.0) {
                    return false;
                }
            }
            *angle = sign * std::numbers::pi / denom;
            return true;
        }
        double value = 0.0;
        if (!parse_full_double(token, &value) || !std::isfinite(value)) {
            return false;
        }
        *angle = value;
        return true;
    }

    static bool parse_full_double(const std::string &s, double *out) {
        if (s.empty()) {
            return false;
        }
        // Reject strtod's inf/nan forms; only plain decimals are valid angles.
        for (char c : s) {
            if (std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E') {
                return false;
            }
        }
        char *end = nullptr;
        double value = std::strtod(s.c_str(), &end);
        if (end != s.c_str() + s.size()) {
            return false;
        }
        *out = value;
        return true;
    }

    static Gate make_gate(const GateSpan &g) {
        std::vector<int> qubits;
        qubits.reserve(g.operands.size());
        for (const Operand &operand : g.operands) {
            qubits.push_back(operand.qubit);
        }
        return Gate(g.op, std::move(qubits), g.angle);
    }
};

} // namespace

ParseResult parse(std::string_view source) { return Parser(source).run(); }

std::string format_angle(double angle) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, angle);
        if (std::strtod(buf, nullptr) == angle) {
            break;
        }
    }
    return buf;
}

std::string gate_text(const Gate &gate) {
    std::string out(opcode_name(gate.opcode));
    for (size_t i = 0; i < gate.qubits.size(); ++i) {
        out += (i == 0) ? " q[" : ", q[";
        out += std::to_string(gate.qubits[i]);
        out += ']';
    }
    if (opcode_has_angle(gate.opcode)) {
        out += ", ";
        out += format_angle(gate.angle);
    }
    return out;
}

std::string print(const Circuit &circuit) {
    std::string out = "version " + circuit.version + "\n";
    out += "qubits " + std::to_string(circuit.num_qubits) + "\n";
    for (const Bundle &bundle : circuit.bundles) {
        if (bundle.gates.size() == 1) {
            out += gate_text(bundle.gates[0]);
        } else {
            out += "{ ";
            for (size_t i = 0; i < bundle.gates.size(); ++i) {
                if (i > 0) {
                    out += " | ";
                }
                out += gate_text(bundle.gates[i]);
            }
            out += " }";
        }
        out += '\n';
    }
    return out;
}

} // namespace qstack
