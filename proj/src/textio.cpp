// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/textio.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace cubereach {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::vector<std::string_view> tokens_of(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

Count parse_count(std::string_view s, std::string_view what) {
    Count value = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw DomainError("expected a count in " + std::string(what) + ": '" +
                          std::string(s) + "'");
    return value;
}

} // namespace

std::string render_multiset(const MultiSet& m,
                            std::span<const std::string> state_names) {
    std::ostringstream out;
    out << "{";
    bool first = true;
    for (const auto& [q, c] : m.entries()) {
        if (!first) out << ", ";
        first = false;
        out << (q < state_names.size() ? state_names[q] : "?" + std::to_string(q))
            << ":" << c;
    }
    out << "}";
    return out.str();
}

std::string render_asms_config(const AsmsConfig& c, const AsmsModel& model) {
    return render_multiset(c.processes, model.state_names()) + " reg=" +
           model.letter_name(c.reg);
}

std::string multiset_literal(const MultiSet& m,
                             std::span<const std::string> state_names) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [q, c] : m.entries()) {
        if (!first) out << ",";
        first = false;
        out << state_names[q] << "=" << c;
    }
    return out.str();
}

std::string config_literal(const AsmsConfig& c, const AsmsModel& model) {
    std::string body = multiset_literal(c.processes, model.state_names());
    if (!body.empty()) body += ",";
    return body + "reg=" + model.letter_name(c.reg);
}

namespace {

template <class FindState>
MultiSet parse_multiset_literal(std::string_view text, FindState&& find_state,
                                LetterId* reg,
                                const AsmsModel* reg_model) {
    std::vector<MultiSet::Entry> entries;
    text = trim(text);
    if (text.empty()) {
        if (reg) throw DomainError("configuration literal is missing reg=");
        return MultiSet{};
    }
    bool saw_reg = false;
    for (std::string_view part : split(text, ',')) {
        part = trim(part);
        if (part.empty()) continue;
        auto eq = part.find('=');
        if (eq == std::string_view::npos)
            throw DomainError("expected name=count in '" + std::string(part) +
                              "'");
        std::string_view name = trim(part.substr(0, eq));
        std::string_view value = trim(part.substr(eq + 1));
        if (reg && name == "reg") {
            auto letter = reg_model->find_letter(value);
            if (!letter)
                throw DomainError("unknown register value '" +
                                  std::string(value) + "'");
            *reg = *letter;
            saw_reg = true;
            continue;
        }
        auto q = find_state(name);
        if (!q) throw DomainError("unknown state '" + std::string(name) + "'");
        entries.push_back({*q, parse_count(value, "configuration literal")});
    }
    if (reg && !saw_reg)
        throw DomainError("configuration literal is missing reg=");
    return MultiSet(std::move(entries));
}

} // namespace

MultiSet parse_config(std::string_view text, const RbnModel& model) {
    return parse_multiset_literal(
        text, [&](std::string_view n) { return model.find_state(n); }, nullptr,
        nullptr);
}

MultiSet parse_config(std::string_view text, const IoNetModel& model) {
    return parse_multiset_literal(
        text, [&](std::string_view n) { return model.find_state(n); }, nullptr,
        nullptr);
}

AsmsConfig parse_asms_config(std::string_view text, const AsmsModel& model) {
    AsmsConfig c;
    c.processes = parse_multiset_literal(
        text, [&](std::string_view n) { return model.find_state(n); }, &c.reg,
        &model);
    return c;
}

std::string render_transition(const RbnModel& m, std::uint32_t t) {
    const RbnTransition& tr = m.transition(t);
    return m.state_name(tr.source) +
           (tr.action == RbnAction::Broadcast ? " !" : " ?") +
           m.letter_name(tr.letter) + " " + m.state_name(tr.target);
}

std::string render_transition(const AsmsModel& m, std::uint32_t t) {
    const AsmsTransition& tr = m.transition(t);
    return m.state_name(tr.source) +
           (tr.op == RegisterOp::Write ? " W(" : " R(") +
           m.letter_name(tr.letter) + ") " + m.state_name(tr.target);
}

std::string render_transition(const IoNetModel& m, std::uint32_t t) {
    const IoTransition& tr = m.transition(t);
    return m.state_name(tr.source) + " @ " + m.state_name(tr.observed) +
           " -> " + m.state_name(tr.target);
}

namespace {

std::string render_rbn_label(const RbnModel& m, const RbnStepLabel& label) {
    std::string out = render_transition(m, label.broadcast);
    for (const auto& [idx, mult] : label.receivers) {
        out += " + " + render_transition(m, idx);
        if (mult > 1) out += " *" + std::to_string(mult);
    }
    return out;
}

} // namespace

std::string emit_trace(const RbnModel& m, const RbnTrace& t,
                       std::string_view model_name) {
    std::ostringstream out;
    out << "model " << model_name << "\n";
    out << "init " << multiset_literal(t.initial, m.state_names()) << "\n";
    for (const auto& step : t.steps)
        out << "step " << render_rbn_label(m, step.label) << "\n";
    return out.str();
}

std::string emit_trace(const AsmsModel& m, const AsmsTrace& t,
                       std::string_view model_name) {
    std::ostringstream out;
    out << "model " << model_name << "\n";
    out << "init " << config_literal(t.initial, m) << "\n";
    for (const auto& step : t.steps)
        out << "step " << render_transition(m, step.label) << "\n";
    return out.str();
}

std::string emit_trace(const IoNetModel& m, const IoTrace& t,
                       std::string_view model_name) {
    std::ostringstream out;
    out << "model " << model_name << "\n";
    out << "init " << multiset_literal(t.initial, m.state_names()) << "\n";
    for (const auto& step : t.steps)
        out << "step " << render_transition(m, step.label) << "\n";
    return out.str();
}

namespace {

struct TraceLines {
    std::string_view init;
    std::vector<std::pair<std::string_view, std::string_view>> steps; // label, expected
};

TraceLines collect_trace_lines(std::string_view text) {
    TraceLines out;
    bool saw_init = false;
    for (std::string_view raw : split(text, '\n')) {
        std::string_view line = trim(raw);
        if (line.empty() || line.starts_with("//")) continue;
        if (line.starts_with("model ")) continue;
        if (line.starts_with("init ") || line == "init") {
            out.init = trim(line.substr(4));
            saw_init = true;
            continue;
        }
        if (line.starts_with("step")) {
            std::string_view body = trim(line.substr(4));
            std::string_view expected;
            auto arrow = body.find("=>");
            if (arrow != std::string_view::npos) {
                expected = trim(body.substr(arrow + 2));
                body = trim(body.substr(0, arrow));
            }
            out.steps.push_back({body, expected});
            continue;
        }
        throw DomainError("unrecognized run line: '" + std::string(line) + "'");
    }
    if (!saw_init) throw DomainError("run file has no init line");
    return out;
}

template <class Model>
StateId need_state(const Model& m, std::string_view name) {
    auto q = m.find_state(name);
    if (!q) throw DomainError("unknown state '" + std::string(name) + "'");
    return *q;
}

template <class Model>
LetterId need_letter(const Model& m, std::string_view name) {
    auto a = m.find_letter(name);
    if (!a) throw DomainError("unknown letter '" + std::string(name) + "'");
    return *a;
}

} // namespace

std::string trace_model_name(std::string_view text) {
    for (std::string_view raw : split(text, '\n')) {
        std::string_view line = trim(raw);
        if (line.starts_with("model "))
            return std::string(trim(line.substr(6)));
    }
    throw DomainError("run file has no model line");
}

RbnTrace parse_trace(std::string_view text, const RbnModel& model) {
    TraceLines lines = collect_trace_lines(text);
    RbnTrace trace;
    trace.initial = parse_config(lines.init, model);
    MultiSet cur = trace.initial;
    for (const auto& [body, expected] : lines.steps) {
        RbnStepLabel label;
        bool first = true;
        for (std::string_view part : split(body, '+')) {
            auto toks = tokens_of(part);
            if (toks.size() < 3)
                throw DomainError("malformed step: '" + std::string(body) + "'");
            std::string_view op = toks[1];
            if (op.size() < 2 || (op[0] != '!' && op[0] != '?'))
                throw DomainError("malformed transition in step: '" +
                                  std::string(part) + "'");
            RbnTransition t{need_state(model, toks[0]),
                            op[0] == '!' ? RbnAction::Broadcast
                                         : RbnAction::Receive,
                            need_letter(model, op.substr(1)),
                            need_state(model, toks[2])};
            auto idx = model.find_transition(t);
            if (!idx)
                throw DomainError("no such transition: '" + std::string(part) +
                                  "'");
            Count mult = 1;
            if (toks.size() == 4 && toks[3].starts_with('*'))
                mult = parse_count(toks[3].substr(1), "receiver multiplicity");
            else if (toks.size() > 3)
                throw DomainError("trailing tokens in step: '" +
                                  std::string(part) + "'");
            if (first) {
                label.broadcast = *idx;
                if (mult != 1)
                    throw DomainError("broadcast cannot carry a multiplicity");
            } else {
                label.receivers.push_back({*idx, mult});
            }
            first = false;
        }
        std::sort(label.receivers.begin(), label.receivers.end());
        MultiSet result;
        if (!expected.empty()) {
            result = parse_config(expected, model);
        } else {
            auto next = rbn_step(model, cur, label);
            if (!next)
                throw DomainError("step is not enabled: '" + std::string(body) +
                                  "'");
            result = std::move(*next);
        }
        cur = result;
        trace.steps.push_back({std::move(label), std::move(result)});
    }
    return trace;
}

AsmsTrace parse_trace(std::string_view text, const AsmsModel& model) {
    TraceLines lines = collect_trace_lines(text);
    AsmsTrace trace;
    trace.initial = parse_asms_config(lines.init, model);
    AsmsConfig cur = trace.initial;
    for (const auto& [body, expected] : lines.steps) {
        auto toks = tokens_of(body);
        if (toks.size() != 3)
            throw DomainError("malformed step: '" + std::string(body) + "'");
        std::string_view op = toks[1];
        if (op.size() < 4 || (op[0] != 'W' && op[0] != 'R') || op[1] != '(' ||
            op.back() != ')')
            throw DomainError("malformed register operation: '" +
                              std::string(op) + "'");
        AsmsTransition t{need_state(model, toks[0]),
                         op[0] == 'W' ? RegisterOp::Write : RegisterOp::Read,
                         need_letter(model, op.substr(2, op.size() - 3)),
                         need_state(model, toks[2])};
        auto idx = model.find_transition(t);
        if (!idx)
            throw DomainError("no such transition: '" + std::string(body) + "'");
        AsmsConfig result;
        if (!expected.empty()) {
            result = parse_asms_config(expected, model);
        } else {
            auto next = asms_step(model, cur, *idx);
            if (!next)
                throw DomainError("step is not enabled: '" + std::string(body) +
                                  "'");
            result = std::move(*next);
        }
        cur = result;
        trace.steps.push_back({*idx, std::move(result)});
    }
    return trace;
}

IoTrace parse_trace(std::string_view text, const IoNetModel& model) {
    TraceLines lines = collect_trace_lines(text);
    IoTrace trace;
    trace.initial = parse_config(lines.init, model);
    MultiSet cur = trace.initial;
    for (const auto& [body, expected] : lines.steps) {
        auto toks = tokens_of(body);
        if (toks.size() != 5 || toks[1] != "@" || toks[3] != "->")
            throw DomainError("malformed step: '" + std::string(body) + "'");
        IoTransition t{need_state(model, toks[0]), need_state(model, toks[2]),
                       need_state(model, toks[4])};
        auto idx = model.find_transition(t);
        if (!idx)
            throw DomainError("no such transition: '" + std::string(body) + "'");
        MultiSet result;
        if (!expected.empty()) {
            result = parse_config(expected, model);
        } else {
            auto next = io_step(model, cur, *idx);
            if (!next)
                throw DomainError("step is not enabled: '" + std::string(body) +
                                  "'");
            result = std::move(*next);
        }
        cur = result;
        trace.steps.push_back({*idx, std::move(result)});
    }
    return trace;
}

} // namespace cubereach
