#pragma once

#include <string>

#include "mnls/field.hpp"

namespace mnls {

/// Field snapshot file: a small text header (dim, n, box_half_length,
/// offset, name, time) followed by flat little-endian float64 (re, im)
/// pairs in row-major order with x1 fastest.
void write_snapshot(const std::string& path, const ComplexField& f,
                    const std::string& name, double time);

struct Snapshot {
    ComplexField field;
    std::string name;
    double time = 0.0;
};

Snapshot read_snapshot(const std::string& path);

}  // namespace mnls
