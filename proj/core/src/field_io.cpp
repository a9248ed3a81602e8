#include "infospace/field_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace infospace {

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_field(const TensorField& field, const std::string& base_path) {
    nlohmann::ordered_json header;
    header["schema_version"] = 1;
    header["rank"] = field.rank();
    header["extents"] = field.lattice().extents;
    header["spacing"] = field.lattice().spacing;
    header["origin"] = field.lattice().origin.c;
    std::vector<std::string> var;
    for (Variance v : field.variance()) {
        var.push_back(v == Variance::contravariant ? "contravariant" : "covariant");
    }
    header["variance"] = var;
    header["layout"] = "site-major,index-major-base4-bigendian";

    std::ofstream hf(base_path + ".json");
    if (!hf) {
        fail(ErrorCode::io_error, "lattice_tensor", "save_field",
             "cannot open " + base_path + ".json for writing");
    }
    hf << header.dump(2) << "\n";

    std::ofstream cf(base_path + ".csv");
    if (!cf) {
        fail(ErrorCode::io_error, "lattice_tensor", "save_field",
             "cannot open " + base_path + ".csv for writing");
    }
    const std::size_t nc = field.components_per_site();
    for (std::size_t s = 0; s < field.lattice().site_count(); ++s) {
        auto row = field.site_components(s);
        for (std::size_t c = 0; c < nc; ++c) {
            if (c) cf << ',';
            cf << format_double(row[c]);
        }
        cf << '\n';
    }
}

TensorField load_field(const std::string& base_path) {
    std::ifstream hf(base_path + ".json");
    if (!hf) {
        fail(ErrorCode::io_error, "lattice_tensor", "load_field",
             "cannot open " + base_path + ".json");
    }
    nlohmann::json header;
    try {
        hf >> header;
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::io_error, "lattice_tensor", "load_field",
             std::string("bad header: ") + e.what());
    }

    Index4 extents{};
    std::array<double, 4> spacing{};
    FourVector origin;
    for (int a = 0; a < 4; ++a) {
        extents[a] = header.at("extents").at(a).get<int>();
        spacing[a] = header.at("spacing").at(a).get<double>();
        origin[a] = header.at("origin").at(a).get<double>();
    }
    const int rank = header.at("rank").get<int>();
    std::vector<Variance> var;
    for (const auto& v : header.at("variance")) {
        var.push_back(v.get<std::string>() == "covariant" ? Variance::covariant
                                                          : Variance::contravariant);
    }
    TensorField field(Lattice4(extents, spacing, origin), rank, var);

    std::ifstream cf(base_path + ".csv");
    if (!cf) {
        fail(ErrorCode::io_error, "lattice_tensor", "load_field",
             "cannot open " + base_path + ".csv");
    }
    const std::size_t nc = field.components_per_site();
    std::string line;
    for (std::size_t s = 0; s < field.lattice().site_count(); ++s) {
        if (!std::getline(cf, line)) {
            fail(ErrorCode::io_error, "lattice_tensor", "load_field",
                 "csv has fewer rows than lattice sites");
        }
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < nc; ++c) {
            if (!std::getline(ss, cell, ',')) {
                fail(ErrorCode::io_error, "lattice_tensor", "load_field",
                     "csv row has fewer columns than components");
            }
            field.at(s, c) = std::stod(cell);
        }
    }
    if (!field.all_finite()) {
        fail(ErrorCode::invalid_input, "lattice_tensor", "load_field",
             "loaded field has non-finite components");
    }
    return field;
}

}  // namespace infospace
