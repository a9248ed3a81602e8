#include "infospace/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "report_detail.hpp"

namespace infospace::cli {

namespace detail {

namespace {

void append_escaped(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void dump_value(std::string& out, const nlohmann::ordered_json& j, int indent) {
    const std::string pad(indent * 2, ' ');
    const std::string pad_in((indent + 1) * 2, ' ');
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::null: out += "null"; break;
        case nlohmann::ordered_json::value_t::boolean:
            out += j.get<bool>() ? "true" : "false";
            break;
        case nlohmann::ordered_json::value_t::number_integer:
        case nlohmann::ordered_json::value_t::number_unsigned: {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%lld", static_cast<long long>(j.get<long long>()));
            out += buf;
            break;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            // Fixed 17 significant digits so identical values always render
            // to identical bytes.
            char buf[48];
            std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
            out += buf;
            break;
        }
        case nlohmann::ordered_json::value_t::string:
            append_escaped(out, j.get<std::string>());
            break;
        case nlohmann::ordered_json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                break;
            }
            out += "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_value(out, item, indent + 1);
            }
            out += "\n" + pad + "]";
            break;
        }
        case nlohmann::ordered_json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                break;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                append_escaped(out, it.key());
                out += ": ";
                dump_value(out, it.value(), indent + 1);
            }
            out += "\n" + pad + "}";
            break;
        }
        default: out += "null";
    }
}

}  // namespace

std::string dump_deterministic(const nlohmann::ordered_json& j) {
    std::string out;
    dump_value(out, j, 0);
    out += '\n';
    return out;
}

std::string format_g17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

const char* tool_version() { return "0.1.0"; }

std::string constants_table_json(const InfoConstants& k) {
    nlohmann::ordered_json j;
    const char* mode = k.mode == UnitMode::SI ? "SI" : "NATURAL";
    const auto entry = [&](double value, const char* units) {
        nlohmann::ordered_json e;
        e["value"] = value;
        e["value_base2"] = format_binary_exponent(value);
        e["units"] = units;
        e["mode"] = mode;
        return e;
    };
    j["lambda_c"] = entry(k.lambda_c, "bit");
    j["nu_c"] = entry(k.nu_c, "bit/s");
    j["Q_c"] = entry(k.q_c, "bit^3/s");
    j["hbar_c"] = entry(k.hbar_c, "bit^5/s^2");
    j["t_P"] = entry(k.t_p, "s");
    j["l_P"] = entry(k.l_p, "m");
    return detail::dump_deterministic(j);
}

std::vector<std::string> emit(const RunReport& report, const EmitOptions& opts) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    const fs::path dir(opts.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);

    const fs::path json_path = dir / report.output.json_path;
    {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) {
            fail(ErrorCode::io_error, "cli_harness", "emit",
                 "cannot write " + json_path.string());
        }
        out << report.json_text;
    }
    written.push_back(json_path.string());

    const bool want_csv = (report.output.csv || opts.force_csv) && !report.output.stats_only;
    if (want_csv) {
        for (const auto& f : report.csv_files) {
            const fs::path p = dir / f.name;
            std::ofstream out(p, std::ios::binary);
            if (!out) {
                fail(ErrorCode::io_error, "cli_harness", "emit", "cannot write " + p.string());
            }
            out << f.content;
            written.push_back(p.string());
        }
    }
    return written;
}

}  // namespace infospace::cli
