#pragma once

#include "mmdbound/experiments.hpp"
#include "mmdbound/table.hpp"

#include <filesystem>
#include <string>

namespace mmdb {

enum class PlotKind { power, bounds, optgamma, mse };

PlotKind plot_kind_for(ExperimentKind kind);
PlotKind parse_plot_kind(const std::string& text);

/// Renders a static line plot of `table`. One <path class="series"> per
/// series; infinite cells break the line. The mse and optgamma kinds use a
/// log-scale y axis. Throws SchemaError (and writes nothing) on an empty
/// table or missing columns.
std::string render_plot(const Table& table, PlotKind kind);

void emit_plot(const Table& table, PlotKind kind, const std::filesystem::path& path);

}  // namespace mmdb
