// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "cubereach/semantics.hpp"

namespace cubereach {

// Pretty renderings: multisets as {state:count, ...}, bounds as lo..hi with
// inf for unbounded.
std::string render_multiset(const MultiSet& m,
                            std::span<const std::string> state_names);
std::string render_asms_config(const AsmsConfig& c, const AsmsModel& model);

// Config literals, the CLI input form: comma-separated state=count pairs;
// shared-memory configurations append reg=letter. An empty string denotes
// the empty configuration.
std::string multiset_literal(const MultiSet& m,
                             std::span<const std::string> state_names);
std::string config_literal(const AsmsConfig& c, const AsmsModel& model);

MultiSet parse_config(std::string_view text, const RbnModel& model);
MultiSet parse_config(std::string_view text, const IoNetModel& model);
AsmsConfig parse_asms_config(std::string_view text, const AsmsModel& model);

// One-line transition renderings, matching the model description syntax.
std::string render_transition(const RbnModel& m, std::uint32_t t);
std::string render_transition(const AsmsModel& m, std::uint32_t t);
std::string render_transition(const IoNetModel& m, std::uint32_t t);

// Line-oriented run files: a model line, an init line, then one step label
// per line ("step <broadcast> [+ <receive> [*mult]]..." for broadcast
// models, "step <transition>" otherwise). A step may carry an expected
// result after "=>", which replay checks against.
std::string emit_trace(const RbnModel& m, const RbnTrace& t,
                       std::string_view model_name);
std::string emit_trace(const AsmsModel& m, const AsmsTrace& t,
                       std::string_view model_name);
std::string emit_trace(const IoNetModel& m, const IoTrace& t,
                       std::string_view model_name);

/// The model a run file refers to; DomainError when the header is missing.
std::string trace_model_name(std::string_view text);

RbnTrace parse_trace(std::string_view text, const RbnModel& model);
AsmsTrace parse_trace(std::string_view text, const AsmsModel& model);
IoTrace parse_trace(std::string_view text, const IoNetModel& model);

} // namespace cubereach
