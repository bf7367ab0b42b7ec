// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "cubereach/compile.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace cubereach {

namespace {

// Generated helper names live beside user names; collisions are resolved by
// suffixing, so decoding stays keyed by index, never by name.
std::string fresh_name(std::unordered_set<std::string>& used,
                       const std::string& candidate) {
    if (used.insert(candidate).second) return candidate;
    for (unsigned k = 2;; ++k) {
        std::string name = candidate + "~" + std::to_string(k);
        if (used.insert(name).second) return name;
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Broadcast network -> shared memory
// ---------------------------------------------------------------------------

RbnToAsmsArtifact compile_rbn_to_asms(const RbnModel& r) {
    std::unordered_set<std::string> used_states(r.state_names().begin(),
                                                r.state_names().end());
    std::vector<std::string> states(r.state_names().begin(),
                                    r.state_names().end());

    // one intermediary per (source, letter, target) triple; a broadcast and a
    // receive over the same triple share it
    std::vector<StateId> intermediary(r.transitions().size());
    std::unordered_map<std::string, StateId> inter_by_key;
    for (std::uint32_t i = 0; i < r.transitions().size(); ++i) {
        const RbnTransition& t = r.transition(i);
        std::string key = std::to_string(t.source) + "." +
                          std::to_string(t.letter) + "." +
                          std::to_string(t.target);
        auto it = inter_by_key.find(key);
        if (it == inter_by_key.end()) {
            StateId id = static_cast<StateId>(states.size());
            states.push_back(fresh_name(
                used_states, r.state_name(t.source) + "_" +
                                 r.letter_name(t.letter) + "_" +
                                 r.state_name(t.target)));
            it = inter_by_key.emplace(std::move(key), id).first;
        }
        intermediary[i] = it->second;
    }

    std::unordered_set<std::string> used_letters(r.letter_names().begin(),
                                                 r.letter_names().end());
    std::vector<std::string> letters(r.letter_names().begin(),
                                     r.letter_names().end());
    LetterId idle = static_cast<LetterId>(letters.size());
    letters.push_back(fresh_name(used_letters, "#"));

    std::vector<AsmsTransition> ts;
    std::vector<std::uint32_t> enter(r.transitions().size());
    std::vector<std::uint32_t> exit(r.transitions().size());
    for (std::uint32_t i = 0; i < r.transitions().size(); ++i) {
        const RbnTransition& t = r.transition(i);
        RegisterOp op = t.action == RbnAction::Broadcast ? RegisterOp::Write
                                                         : RegisterOp::Read;
        enter[i] = static_cast<std::uint32_t>(ts.size());
        ts.push_back({t.source, op, t.letter, intermediary[i]});
    }
    std::unordered_map<StateId, std::uint32_t> exit_of_inter;
    for (std::uint32_t i = 0; i < r.transitions().size(); ++i) {
        auto it = exit_of_inter.find(intermediary[i]);
        if (it == exit_of_inter.end()) {
            std::uint32_t idx = static_cast<std::uint32_t>(ts.size());
            ts.push_back({intermediary[i], RegisterOp::Write, idle,
                          r.transition(i).target});
            it = exit_of_inter.emplace(intermediary[i], idx).first;
        }
        exit[i] = it->second;
    }

    AsmsModel target(std::move(states), std::move(letters), std::move(ts));
    return RbnToAsmsArtifact{r,
                             std::move(target),
                             idle,
                             static_cast<StateId>(r.state_count()),
                             std::move(enter),
                             std::move(exit),
                             std::move(intermediary)};
}

AsmsConfig RbnToAsmsArtifact::embed_config(const MultiSet& c) const {
    to_dense(c, source.state_count()); // universe check
    return {c, idle};
}

bool RbnToAsmsArtifact::is_good(const AsmsConfig& c) const {
    if (c.reg != idle) return false;
    return c.processes.empty() || c.processes.max_state() < first_helper;
}

MultiSet RbnToAsmsArtifact::decode_config(const AsmsConfig& c) const {
    if (!is_good(c))
        throw DomainError("configuration is not in the embedding image");
    return c.processes;
}

AsmsCube RbnToAsmsArtifact::embed_cube(const Cube& c) const {
    if (c.state_count() != source.state_count())
        throw DomainError("cube universe differs from the source state set");
    std::vector<Count> lo(target.state_count(), 0);
    std::vector<UBound> hi(target.state_count(), UBound::of(0));
    for (StateId q = 0; q < first_helper; ++q) {
        lo[q] = c.lower(q);
        hi[q] = c.upper(q);
    }
    return {Cube(std::move(lo), std::move(hi)), idle};
}

std::vector<std::uint32_t> pseudo_step_word(const RbnToAsmsArtifact& art,
                                            const PseudoStep& step) {
    std::vector<std::uint32_t> word;
    word.push_back(art.enter[step.broadcast]);
    for (std::uint32_t r : step.receives) word.push_back(art.enter[r]);
    word.push_back(art.exit[step.broadcast]);
    for (std::uint32_t r : step.receives) word.push_back(art.exit[r]);
    return word;
}

namespace {

PseudoStep pseudo_step_of_label(const RbnStepLabel& label) {
    PseudoStep step;
    step.broadcast = label.broadcast;
    for (const auto& [idx, mult] : label.receivers)
        for (Count i = 0; i < mult; ++i) step.receives.push_back(idx);
    return step;
}

AsmsTrace replay_words(const AsmsModel& target, const AsmsConfig& from,
                       const std::vector<std::uint32_t>& labels,
                       const char* what) {
    AsmsTrace trace;
    trace.initial = from;
    AsmsConfig cur = from;
    for (std::uint32_t l : labels) {
        auto next = asms_step(target, cur, l);
        if (!next)
            throw std::logic_error(std::string(what) +
                                   ": constructed word does not replay");
        cur = std::move(*next);
        trace.steps.push_back({l, cur});
    }
    return trace;
}

// Classification of compiled-model transitions: entries go from a source
// state into an intermediary (writes for broadcasts, reads for receives),
// exits leave an intermediary writing the idle letter.
struct RbnToAsmsRoles {
    const RbnToAsmsArtifact& art;
    std::unordered_map<std::uint32_t, std::uint32_t> source_of_enter;

    explicit RbnToAsmsRoles(const RbnToAsmsArtifact& a) : art(a) {
        for (std::uint32_t i = 0; i < a.enter.size(); ++i)
            source_of_enter.emplace(a.enter[i], i);
    }

    bool is_enter(std::uint32_t t) const {
        return art.target.transition(t).source < art.first_helper;
    }
    bool is_broadcast_enter(std::uint32_t t) const {
        return is_enter(t) && art.target.transition(t).op == RegisterOp::Write;
    }
    bool is_exit(std::uint32_t t) const { return !is_enter(t); }
    std::uint32_t source_transition(std::uint32_t t) const {
        return source_of_enter.at(t);
    }
};

} // namespace

AsmsTrace encode_run(const RbnToAsmsArtifact& art, const RbnTrace& trace) {
    if (!replay(art.source, trace).ok)
        throw DomainError("source run does not replay");
    std::vector<std::uint32_t> labels;
    for (const auto& step : trace.steps)
        for (std::uint32_t l :
             pseudo_step_word(art, pseudo_step_of_label(step.label)))
            labels.push_back(l);
    return replay_words(art.target, art.embed_config(trace.initial), labels,
                        "encode_run");
}

AsmsTrace normalize_asms_run(const RbnToAsmsArtifact& art,
                             const AsmsTrace& trace) {
    if (!art.is_good(trace.initial) || !art.is_good(trace.final_config()))
        throw DomainError("run endpoints are not good configurations");
    if (!replay(art.target, trace).ok)
        throw DomainError("run does not replay in the compiled model");

    RbnToAsmsRoles roles(art);
    std::vector<std::uint32_t> rest;
    for (const auto& s : trace.steps) rest.push_back(s.label);

    std::vector<std::uint32_t> out;
    AsmsConfig cur = trace.initial;
    while (!rest.empty()) {
        // From a good configuration only broadcast entries are enabled.
        if (!roles.is_broadcast_enter(rest[0]))
            throw std::logic_error("segment does not open with a broadcast entry");

        // cut before the next broadcast entry
        std::size_t cut = rest.size();
        for (std::size_t j = 1; j < rest.size(); ++j)
            if (roles.is_broadcast_enter(rest[j])) {
                cut = j;
                break;
            }

        // replay the prefix to see which intermediaries are still parked
        AsmsConfig z = cur;
        for (std::size_t j = 0; j < cut; ++j) {
            auto next = asms_step(art.target, z, rest[j]);
            if (!next) throw std::logic_error("validated run stopped replaying");
            z = std::move(*next);
        }
        std::unordered_map<StateId, Count> owed;
        for (const auto& [q, c] : z.processes.entries())
            if (q >= art.first_helper) owed[q] = c;

        // prepone the owed exits: their first occurrences after the cut.
        // Exits write the idle letter and move private processes, so pulling
        // them over the suffix stretch preserves replayability.
        std::vector<std::size_t> preponed;
        for (std::size_t j = cut; j < rest.size() && !owed.empty(); ++j) {
            if (!roles.is_exit(rest[j])) continue;
            StateId inter = art.target.transition(rest[j]).source;
            auto it = owed.find(inter);
            if (it == owed.end()) continue;
            preponed.push_back(j);
            if (--it->second == 0) owed.erase(it);
        }
        if (!owed.empty())
            throw std::logic_error("good-to-good run leaves an intermediary parked");

        // entries of the segment, in firing order
        PseudoStep step;
        step.broadcast = roles.source_transition(rest[0]);
        for (std::size_t j = 1; j < cut; ++j)
            if (roles.is_enter(rest[j]))
                step.receives.push_back(roles.source_transition(rest[j]));

        for (std::uint32_t l : pseudo_step_word(art, step)) {
            auto next = asms_step(art.target, cur, l);
            if (!next)
                throw std::logic_error("canonical pseudo-step does not replay");
            cur = std::move(*next);
            out.push_back(l);
        }

        std::vector<std::uint32_t> remaining;
        std::size_t pi = 0;
        for (std::size_t j = cut; j < rest.size(); ++j) {
            if (pi < preponed.size() && preponed[pi] == j) {
                ++pi;
                continue;
            }
            remaining.push_back(rest[j]);
        }
        rest = std::move(remaining);
    }

    if (cur != trace.final_config())
        throw std::logic_error("normalization changed the run endpoint");
    return replay_words(art.target, trace.initial, out, "normalize_asms_run");
}

std::vector<PseudoStep> pseudo_step_decomposition(const RbnToAsmsArtifact& art,
                                                  const AsmsTrace& normal) {
    RbnToAsmsRoles roles(art);
    std::vector<PseudoStep> steps;
    std::size_t i = 0;
    const auto label = [&](std::size_t j) { return normal.steps[j].label; };
    while (i < normal.steps.size()) {
        if (!roles.is_broadcast_enter(label(i)))
            throw DomainError(
                "run is not in normal form: expected a broadcast entry");
        PseudoStep step;
        step.broadcast = roles.source_transition(label(i));
        ++i;
        while (i < normal.steps.size() && roles.is_enter(label(i)) &&
               !roles.is_broadcast_enter(label(i))) {
            step.receives.push_back(roles.source_transition(label(i)));
            ++i;
        }
        // the exits of the entries, broadcast's first, then in entry order
        std::vector<std::uint32_t> expected;
        expected.push_back(art.exit[step.broadcast]);
        for (std::uint32_t r : step.receives) expected.push_back(art.exit[r]);
        for (std::uint32_t e : expected) {
            if (i >= normal.steps.size() || label(i) != e)
                throw DomainError(
                    "run is not in normal form: exits do not match entries");
            ++i;
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

RbnTrace decode_run(const RbnToAsmsArtifact& art, const AsmsTrace& normal) {
    if (!art.is_good(normal.initial) || !art.is_good(normal.final_config()))
        throw DomainError("run endpoints are not good configurations");
    if (!replay(art.target, normal).ok)
        throw DomainError("run does not replay in the compiled model");
    std::vector<PseudoStep> steps = pseudo_step_decomposition(art, normal);

    RbnTrace trace;
    trace.initial = art.decode_config(normal.initial);
    MultiSet cur = trace.initial;
    for (const PseudoStep& step : steps) {
        RbnStepLabel lab;
        lab.broadcast = step.broadcast;
        std::unordered_map<std::uint32_t, Count> mult;
        for (std::uint32_t r : step.receives) ++mult[r];
        lab.receivers.assign(mult.begin(), mult.end());
        std::sort(lab.receivers.begin(), lab.receivers.end());
        auto next = rbn_step(art.source, cur, lab);
        if (!next) throw std::logic_error("decoded source step is not enabled");
        cur = std::move(*next);
        trace.steps.push_back({std::move(lab), cur});
    }
    if (cur != art.decode_config(normal.final_config()))
        throw std::logic_error("decoded run misses the decoded endpoint");
    return trace;
}

// ---------------------------------------------------------------------------
// Shared memory -> broadcast network
// ---------------------------------------------------------------------------

AsmsToRbnArtifact compile_asms_to_rbn(const AsmsModel& p) {
    using Role = AsmsToRbnArtifact::Role;
    const std::size_t n_letters = p.letter_count();
    std::vector<bool> written(n_letters, false);
    for (const AsmsTransition& t : p.transitions())
        if (t.op == RegisterOp::Write) written[t.letter] = true;

    std::unordered_set<std::string> used_states(p.state_names().begin(),
                                                p.state_names().end());
    std::vector<std::string> states(p.state_names().begin(),
                                    p.state_names().end());

    std::vector<StateId> register_state(n_letters);
    for (LetterId d = 0; d < n_letters; ++d) {
        register_state[d] = static_cast<StateId>(states.size());
        states.push_back(fresh_name(used_states, p.letter_name(d)));
    }
    std::vector<std::optional<StateId>> barred_state(n_letters);
    for (LetterId a = 0; a < n_letters; ++a) {
        if (!written[a]) continue;
        barred_state[a] = static_cast<StateId>(states.size());
        states.push_back(fresh_name(used_states, p.letter_name(a) + "_bar"));
    }
    std::vector<std::optional<StateId>> intermediary(p.transitions().size());
    for (std::uint32_t w = 0; w < p.transitions().size(); ++w) {
        const AsmsTransition& t = p.transition(w);
        if (t.op != RegisterOp::Write) continue;
        intermediary[w] = static_cast<StateId>(states.size());
        states.push_back(fresh_name(used_states,
                                    p.state_name(t.source) + "_" +
                                        p.letter_name(t.letter) + "_" +
                                        p.state_name(t.target)));
    }

    std::unordered_set<std::string> used_letters;
    std::vector<std::string> letters;
    std::vector<LetterId> offer_letter(n_letters, 0), ack_letter(n_letters, 0),
        value_letter(n_letters, 0);
    for (LetterId a = 0; a < n_letters; ++a) {
        if (!written[a]) continue;
        offer_letter[a] = static_cast<LetterId>(letters.size());
        letters.push_back(fresh_name(used_letters, "Ch_" + p.letter_name(a)));
        ack_letter[a] = static_cast<LetterId>(letters.size());
        letters.push_back(fresh_name(used_letters, "Ack_" + p.letter_name(a)));
    }
    for (LetterId d = 0; d < n_letters; ++d) {
        value_letter[d] = static_cast<LetterId>(letters.size());
        letters.push_back(fresh_name(used_letters, "Read_" + p.letter_name(d)));
    }

    std::vector<RbnTransition> ts;
    std::vector<Role> roles;
    for (std::uint32_t w = 0; w < p.transitions().size(); ++w) {
        const AsmsTransition& t = p.transition(w);
        if (t.op != RegisterOp::Write) continue;
        ts.push_back({t.source, RbnAction::Receive, offer_letter[t.letter],
                      *intermediary[w]});
        roles.push_back({Role::AcceptReceive, w});
        ts.push_back({*intermediary[w], RbnAction::Broadcast,
                      ack_letter[t.letter], t.target});
        roles.push_back({Role::AckBroadcast, w});
    }
    for (std::uint32_t r = 0; r < p.transitions().size(); ++r) {
        const AsmsTransition& t = p.transition(r);
        if (t.op != RegisterOp::Read) continue;
        ts.push_back(
            {t.source, RbnAction::Receive, value_letter[t.letter], t.target});
        roles.push_back({Role::ReadReceive, r});
    }
    for (LetterId d = 0; d < n_letters; ++d)
        for (LetterId a = 0; a < n_letters; ++a) {
            if (!written[a]) continue;
            ts.push_back({register_state[d], RbnAction::Broadcast,
                          offer_letter[a], *barred_state[a]});
            roles.push_back({Role::OfferBroadcast, a});
        }
    for (LetterId a = 0; a < n_letters; ++a) {
        if (!written[a]) continue;
        ts.push_back({*barred_state[a], RbnAction::Receive, ack_letter[a],
                      register_state[a]});
        roles.push_back({Role::AckReceive, a});
    }
    for (LetterId d = 0; d < n_letters; ++d) {
        ts.push_back({register_state[d], RbnAction::Broadcast, value_letter[d],
                      register_state[d]});
        roles.push_back({Role::ValueBroadcast, d});
    }

    RbnModel target(std::move(states), std::move(letters), std::move(ts));
    return AsmsToRbnArtifact{p,
                             std::move(target),
                             static_cast<StateId>(p.state_count()),
                             std::move(register_state),
                             std::move(barred_state),
                             std::move(intermediary),
                             std::move(roles)};
}

MultiSet AsmsToRbnArtifact::embed_config(const AsmsConfig& c) const {
    to_dense(c.processes, source.state_count());
    if (c.reg >= source.letter_count())
        throw DomainError("register value outside the alphabet");
    return c.processes + MultiSet::singleton(register_state[c.reg]);
}

bool AsmsToRbnArtifact::is_good(const MultiSet& c) const {
    Count token = 0;
    const StateId reg_end =
        first_helper + static_cast<StateId>(source.letter_count());
    for (const auto& [q, n] : c.entries()) {
        if (q < first_helper) continue;
        if (q >= reg_end) return false; // barred or intermediary occupied
        token += n;
    }
    return token == 1;
}

AsmsConfig AsmsToRbnArtifact::decode_config(const MultiSet& c) const {
    if (!is_good(c))
        throw DomainError("configuration is not in the embedding image");
    std::vector<MultiSet::Entry> procs;
    LetterId reg = 0;
    for (const auto& [q, n] : c.entries()) {
        if (q < first_helper)
            procs.push_back({q, n});
        else
            reg = static_cast<LetterId>(q - first_helper);
    }
    return {MultiSet(std::move(procs)), reg};
}

Cube AsmsToRbnArtifact::embed_cube(const AsmsCube& c) const {
    if (c.bounds.state_count() != source.state_count())
        throw DomainError("cube universe differs from the source state set");
    if (c.reg >= source.letter_count())
        throw DomainError("register value outside the alphabet");
    std::vector<Count> lo(target.state_count(), 0);
    std::vector<UBound> hi(target.state_count(), UBound::of(0));
    for (StateId q = 0; q < first_helper; ++q) {
        lo[q] = c.bounds.lower(q);
        hi[q] = c.bounds.upper(q);
    }
    lo[register_state[c.reg]] = 1;
    hi[register_state[c.reg]] = UBound::of(1);
    return Cube(std::move(lo), std::move(hi));
}

RbnTrace encode_run(const AsmsToRbnArtifact& art, const AsmsTrace& trace) {
    using Role = AsmsToRbnArtifact::Role;
    if (!replay(art.source, trace).ok)
        throw DomainError("source run does not replay");

    // index the handshake transitions once
    const std::size_t n_t = art.target.transitions().size();
    std::vector<std::uint32_t> accept_of(art.source.transitions().size()),
        ack_of(art.source.transitions().size()),
        read_of(art.source.transitions().size());
    std::vector<std::uint32_t> return_of(art.source.letter_count()),
        value_of(art.source.letter_count());
    std::unordered_map<std::uint64_t, std::uint32_t> offer_from; // (d, a)
    for (std::uint32_t i = 0; i < n_t; ++i) {
        const Role& role = art.roles[i];
        switch (role.kind) {
            case Role::AcceptReceive: accept_of[role.ref] = i; break;
            case Role::AckBroadcast: ack_of[role.ref] = i; break;
            case Role::ReadReceive: read_of[role.ref] = i; break;
            case Role::AckReceive: return_of[role.ref] = i; break;
            case Role::ValueBroadcast: value_of[role.ref] = i; break;
            case Role::OfferBroadcast: {
                StateId from = art.target.transition(i).source;
                offer_from[(static_cast<std::uint64_t>(from) << 32) | role.ref] =
                    i;
                break;
            }
        }
    }

    RbnTrace out;
    out.initial = art.embed_config(trace.initial);
    MultiSet cur = out.initial;
    AsmsConfig src = trace.initial;
    auto apply = [&](RbnStepLabel label) {
        auto next = rbn_step(art.target, cur, label);
        if (!next) throw std::logic_error("encoded step is not enabled");
        cur = std::move(*next);
        out.steps.push_back({std::move(label), cur});
    };
    for (const auto& step : trace.steps) {
        const AsmsTransition& t = art.source.transition(step.label);
        if (t.op == RegisterOp::Write) {
            std::uint32_t offer = offer_from.at(
                (static_cast<std::uint64_t>(art.register_state[src.reg]) << 32) |
                t.letter);
            apply({offer, {{accept_of[step.label], 1}}});
            apply({ack_of[step.label], {{return_of[t.letter], 1}}});
        } else {
            apply({value_of[t.letter], {{read_of[step.label], 1}}});
        }
        src = step.result;
    }
    return out;
}

AsmsTrace decode_run(const AsmsToRbnArtifact& art, const RbnTrace& trace) {
    using Role = AsmsToRbnArtifact::Role;
    if (!art.is_good(trace.initial) || !art.is_good(trace.final_config()))
        throw DomainError("run endpoints are not good configurations");
    if (!replay(art.target, trace).ok)
        throw DomainError("run does not replay in the compiled model");

    const std::size_t n = trace.steps.size();
    std::vector<std::vector<std::uint32_t>> at(n), window(n);
    // writers parked in an intermediary, FIFO by the offer that let them in
    std::unordered_map<StateId, std::deque<std::size_t>> pending;

    for (std::size_t pos = 0; pos < n; ++pos) {
        const RbnStepLabel& label = trace.steps[pos].label;
        const Role& role = art.roles[label.broadcast];
        switch (role.kind) {
            case Role::OfferBroadcast:
                for (const auto& [idx, mult] : label.receivers) {
                    if (art.roles[idx].kind != Role::AcceptReceive)
                        throw DomainError(
                            "run does not decode: bad offer receiver");
                    StateId inter = *art.intermediary[art.roles[idx].ref];
                    for (Count i = 0; i < mult; ++i)
                        pending[inter].push_back(pos);
                }
                break;
            case Role::AckBroadcast: {
                std::uint32_t w = role.ref;
                auto& queue = pending[*art.intermediary[w]];
                if (queue.empty())
                    throw std::logic_error("exit without a matching entry");
                std::size_t opened_at = queue.front();
                queue.pop_front();
                bool token_received = false;
                for (const auto& [idx, mult] : label.receivers) {
                    if (art.roles[idx].kind != Role::AckReceive || mult != 1)
                        throw DomainError(
                            "run does not decode: bad ack receiver");
                    token_received = true;
                }
                // An exit the token acknowledged sets the register here; one
                // it missed is placed back in the stretch after its offer,
                // where the register letter matches and no read can occur.
                if (token_received)
                    at[pos].push_back(w);
                else
                    window[opened_at].push_back(w);
                break;
            }
            case Role::ValueBroadcast:
                for (const auto& [idx, mult] : label.receivers) {
                    if (art.roles[idx].kind != Role::ReadReceive)
                        throw DomainError(
                            "run does not decode: bad value receiver");
                    for (Count i = 0; i < mult; ++i)
                        at[pos].push_back(art.roles[idx].ref);
                }
                break;
            default:
                throw DomainError("run does not decode: unexpected broadcast");
        }
    }

    AsmsTrace out;
    out.initial = art.decode_config(trace.initial);
    AsmsConfig cur = out.initial;
    auto apply = [&](std::uint32_t t) {
        auto next = asms_step(art.source, cur, t);
        if (!next) throw std::logic_error("decoded source step is not enabled");
        cur = std::move(*next);
        out.steps.push_back({t, cur});
    };
    for (std::size_t pos = 0; pos < n; ++pos) {
        for (std::uint32_t w : window[pos]) apply(w);
        for (std::uint32_t t : at[pos]) apply(t);
    }
    if (cur != art.decode_config(trace.final_config()))
        throw std::logic_error("decoded run misses the decoded endpoint");
    return out;
}

// ---------------------------------------------------------------------------
// Immediate observation -> broadcast network
// ---------------------------------------------------------------------------

IoToRbnArtifact compile_io_to_rbn(const IoNetModel& net) {
    std::vector<std::string> states(net.state_names().begin(),
                                    net.state_names().end());
    std::vector<std::string> letters = states; // processes announce their state
    std::vector<RbnTransition> ts;
    for (StateId q = 0; q < net.state_count(); ++q)
        ts.push_back({q, RbnAction::Broadcast, q, q});
    for (const IoTransition& t : net.transitions())
        ts.push_back({t.source, RbnAction::Receive, t.observed, t.target});
    return {net, RbnModel(std::move(states), std::move(letters), std::move(ts))};
}

RbnTrace encode_run(const IoToRbnArtifact& art, const IoTrace& trace) {
    if (!replay(art.source, trace).ok)
        throw DomainError("source run does not replay");
    const std::uint32_t n = static_cast<std::uint32_t>(art.source.state_count());
    RbnTrace out;
    out.initial = trace.initial;
    MultiSet cur = trace.initial;
    for (const auto& step : trace.steps) {
        const IoTransition& t = art.source.transition(step.label);
        RbnStepLabel label{t.observed, {{n + step.label, 1}}};
        auto next = rbn_step(art.target, cur, label);
        if (!next) throw std::logic_error("encoded step is not enabled");
        cur = std::move(*next);
        out.steps.push_back({std::move(label), cur});
    }
    return out;
}

IoTrace decode_run(const IoToRbnArtifact& art, const RbnTrace& trace) {
    if (!replay(art.target, trace).ok)
        throw DomainError("run does not replay in the compiled model");
    const std::uint32_t n = static_cast<std::uint32_t>(art.source.state_count());
    IoTrace out;
    out.initial = trace.initial;
    MultiSet cur = trace.initial;
    for (const auto& step : trace.steps) {
        if (step.label.broadcast >= n)
            throw DomainError("run does not decode: unexpected broadcast");
        for (const auto& [idx, mult] : step.label.receivers) {
            if (idx < n) throw DomainError("run does not decode: bad receiver");
            for (Count i = 0; i < mult; ++i) {
                auto next = io_step(art.source, cur, idx - n);
                if (!next)
                    throw std::logic_error("decoded observation is not enabled");
                cur = std::move(*next);
                out.steps.push_back({idx - n, cur});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive harness entry points
// ---------------------------------------------------------------------------

SimulationReport<MultiSet> check_strong_simulation_on(
    const RbnToAsmsArtifact& art, const std::vector<MultiSet>& sources,
    const ExploreOptions& opt) {
    RbnSystem src{&art.source, opt.successor_cap};
    AsmsSystem tgt{&art.target, opt.successor_cap};
    return check_simulation_on(
        src, tgt, sources,
        [&](const MultiSet& c) { return art.embed_config(c); },
        [&](const AsmsConfig& d) { return art.is_good(d); },
        [&](const AsmsConfig& d) { return art.decode_config(d); }, opt);
}

SimulationReport<MultiSet> check_strong_simulation(
    const RbnToAsmsArtifact& art, Count population_bound,
    const ExploreOptions& opt) {
    return check_strong_simulation_on(
        art, enumerate_multisets(art.source.state_count(), 0, population_bound),
        opt);
}

SimulationReport<AsmsConfig> check_strong_simulation_on(
    const AsmsToRbnArtifact& art, const std::vector<AsmsConfig>& sources,
    const ExploreOptions& opt) {
    AsmsSystem src{&art.source, opt.successor_cap};
    RbnSystem tgt{&art.target, opt.successor_cap};
    return check_simulation_on(
        src, tgt, sources,
        [&](const AsmsConfig& c) { return art.embed_config(c); },
        [&](const MultiSet& d) { return art.is_good(d); },
        [&](const MultiSet& d) { return art.decode_config(d); }, opt);
}

SimulationReport<AsmsConfig> check_strong_simulation(
    const AsmsToRbnArtifact& art, Count population_bound,
    const ExploreOptions& opt) {
    std::vector<AsmsConfig> sources;
    for (const MultiSet& m :
         enumerate_multisets(art.source.state_count(), 0, population_bound))
        for (LetterId d = 0; d < art.source.letter_count(); ++d)
            sources.push_back({m, d});
    return check_strong_simulation_on(art, sources, opt);
}

SimulationReport<MultiSet> check_strong_simulation_on(
    const IoToRbnArtifact& art, const std::vector<MultiSet>& sources,
    const ExploreOptions& opt) {
    IoSystem src{&art.source, opt.successor_cap};
    RbnSystem tgt{&art.target, opt.successor_cap};
    return check_simulation_on(
        src, tgt, sources, [](const MultiSet& c) { return c; },
        [](const MultiSet&) { return true; },
        [](const MultiSet& d) { return d; }, opt);
}

SimulationReport<MultiSet> check_strong_simulation(
    const IoToRbnArtifact& art, Count population_bound,
    const ExploreOptions& opt) {
    return check_strong_simulation_on(
        art, enumerate_multisets(art.source.state_count(), 0, population_bound),
        opt);
}

} // namespace cubereach
