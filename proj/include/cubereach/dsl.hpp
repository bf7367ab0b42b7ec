// Copyright (c) cubereach contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cubereach/models.hpp"

namespace cubereach {

struct SourceSpan {
    std::size_t line = 0; // 1-based; 0 means unknown
    std::size_t col = 0;
};

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    std::string message;
    SourceSpan span;
};

std::string to_string(const Diagnostic& d);

/// A named model declaration; exactly one alternative is populated.
struct DslModel {
    std::string name;
    SourceSpan span;
    std::variant<RbnModel, AsmsModel, IoNetModel> model;

    const RbnModel* rbn() const { return std::get_if<RbnModel>(&model); }
    const AsmsModel* asms() const { return std::get_if<AsmsModel>(&model); }
    const IoNetModel* ionet() const { return std::get_if<IoNetModel>(&model); }
};

/// A named cube declaration referring to a declared model. Unlisted states
/// take the declaration's default range (0..0 when absent). Shared-memory
/// cubes carry a register value.
struct DslCube {
    std::string name;
    std::string model_name;
    SourceSpan span;
    Cube bounds{{}, {}};
    std::optional<LetterId> reg;
};

struct DslDocument {
    std::vector<DslModel> models;
    std::vector<DslCube> cubes;

    const DslModel* find_model(std::string_view name) const;
    const DslCube* find_cube(std::string_view name) const;
};

struct ParseResult {
    std::optional<DslDocument> document;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return document.has_value(); }
};

/// Parses a document; on failure the diagnostics carry spans. Syntax errors
/// stop the parse, semantic errors are collected per declaration.
ParseResult parse_document(std::string_view text);

// Emission; parse(emit(d)) reproduces d up to whitespace.
std::string emit_model(const RbnModel& m, std::string_view name);
std::string emit_model(const AsmsModel& m, std::string_view name);
std::string emit_model(const IoNetModel& m, std::string_view name);
std::string emit_cube(const DslCube& cube, const DslModel& model);
std::string emit_document(const DslDocument& doc);

} // namespace cubereach
