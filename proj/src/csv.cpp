#include "fracstab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include "fracstab/errors.hpp"

namespace fracstab {

std::string format_shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_sig12(double v) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, ptr);
}

namespace {

bool needs_quoting(const std::string& cell) {
    return cell.find_first_of(",\"\n\r") != std::string::npos;
}

void append_cell(std::string& out, const std::string& cell) {
    if (!needs_quoting(cell)) {
        out += cell;
        return;
    }
    out += '"';
    for (char c : cell) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
}

void append_row(std::string& out, const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) {
            out += ',';
        }
        append_cell(out, row[i]);
    }
    out += '\n';
}

}  // namespace

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<ReportRow>& rows) {
    if (header.empty()) {
        throw InvalidArgument("render_csv: header must be nonempty");
    }
    std::string out;
    append_row(out, header);
    for (const ReportRow& row : rows) {
        if (row.size() != header.size()) {
            throw InvalidArgument("render_csv: row width differs from header");
        }
        append_row(out, row);
    }
    return out;
}

void emit_csv(const std::vector<std::string>& header,
              const std::vector<ReportRow>& rows,
              const std::filesystem::path& destination) {
    const std::string body = render_csv(header, rows);
    std::ofstream os(destination, std::ios::binary);  // binary: keep LF as-is
    if (!os) {
        throw IoError("emit_csv: cannot open " + destination.string());
    }
    os.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!os) {
        throw IoError("emit_csv: write failed for " + destination.string());
    }
}

}  // namespace fracstab
