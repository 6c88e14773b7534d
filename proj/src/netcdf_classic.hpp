#pragma once

// Minimal reader for NetCDF classic files (CDF-1 and CDF-2, big-endian).
// Covers what gridded wind inputs need: dimensions, numeric variables,
// numeric and text attributes. NetCDF-4/HDF5 containers are rejected.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace windsim::nc {

enum Type : std::int32_t {
    kByte = 1,
    kChar = 2,
    kShort = 3,
    kInt = 4,
    kFloat = 5,
    kDouble = 6,
};

struct Attribute {
    std::string name;
    Type type = kDouble;
    std::vector<double> numbers;  // numeric attribute payload
    std::string text;             // NC_CHAR payload
};

struct Dimension {
    std::string name;
    std::uint32_t length = 0;  // record dimension stored with its actual count
    bool is_record = false;
};

struct Variable {
    std::string name;
    Type type = kDouble;
    std::vector<std::int32_t> dim_ids;
    std::vector<Attribute> attributes;
    std::uint64_t vsize = 0;
    std::uint64_t begin = 0;
    bool is_record = false;

    const Attribute* attribute(const std::string& attr_name) const;
};

class File {
public:
    explicit File(const std::filesystem::path& path);

    const std::vector<Dimension>& dimensions() const { return dims_; }
    const std::vector<Variable>& variables() const { return vars_; }
    std::uint32_t record_count() const { return numrecs_; }

    const Variable* find_variable(const std::string& name) const;
    const Variable& require_variable(const std::string& name) const;

    /// Element count of one variable (record variables: all records).
    std::uint64_t element_count(const Variable& v) const;

    /// Whole variable as doubles, record-major.
    std::vector<double> read_all(const Variable& v) const;

private:
    std::uint64_t record_stride() const;
    std::uint64_t per_record_elements(const Variable& v) const;

    std::string origin_;
    std::vector<unsigned char> bytes_;
    int version_ = 1;
    std::uint32_t numrecs_ = 0;
    std::vector<Dimension> dims_;
    std::vector<Variable> vars_;
};

}  // namespace windsim::nc
