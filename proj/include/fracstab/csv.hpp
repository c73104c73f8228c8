#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fracstab {

/// One CSV record; cells are already formatted text.
using ReportRow = std::vector<std::string>;

/// Shortest decimal text that round-trips the double exactly. Locale-free.
std::string format_shortest(double v);

/// 12 significant digits, for report scalars. Locale-free.
std::string format_sig12(double v);

/// Writes an RFC-4180-style CSV: header first, LF line endings, cells quoted
/// only when they contain a separator, quote, or newline. All rows must have
/// the header's width. Throws IoError with path context.
void emit_csv(const std::vector<std::string>& header,
              const std::vector<ReportRow>& rows,
              const std::filesystem::path& destination);

/// Same, rendered to a string (the file writers share this).
std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<ReportRow>& rows);

}  // namespace fracstab
