#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "spinlab/field.hpp"

namespace spinlab {

// FLD1 dump: one ASCII header line `FLD1 kind nx ny dx dy x0 y0` followed by
// little-endian float64 samples in storage order, components interleaved.
void write_fld(std::ostream& os, const ScalarField& f);
void write_fld(std::ostream& os, const CplxField& f);
void write_fld(std::ostream& os, const Vec3Field& f);

using AnyField = std::variant<ScalarField, CplxField, Vec3Field>;
AnyField read_fld(std::istream& is);

template <class T>
void write_fld_file(const std::string& path, const Field<T>& f);
AnyField read_fld_file(const std::string& path);

}  // namespace spinlab
