#include "netcdf_classic.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "windsim/errors.hpp"

namespace windsim::nc {

namespace {

constexpr std::uint32_t kTagDimension = 0x0A;
constexpr std::uint32_t kTagVariable = 0x0B;
constexpr std::uint32_t kTagAttribute = 0x0C;
constexpr std::uint32_t kStreamingRecords = 0xFFFFFFFF;

std::size_t type_size(Type t) {
    switch (t) {
    case kByte:
    case kChar: return 1;
    case kShort: return 2;
    case kInt:
    case kFloat: return 4;
    case kDouble: return 8;
    }
    throw DataError("NetCDF: unknown type " + std::to_string(static_cast<int>(t)));
}

std::uint64_t pad4(std::uint64_t n) { return (n + 3) & ~std::uint64_t{3}; }

class Cursor {
public:
    Cursor(const std::vector<unsigned char>& bytes, const std::string& origin)
        : bytes_(bytes), origin_(origin) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = (std::uint32_t{bytes_[pos_]} << 24) | (std::uint32_t{bytes_[pos_ + 1]} << 16) |
                          (std::uint32_t{bytes_[pos_ + 2]} << 8) | std::uint32_t{bytes_[pos_ + 3]};
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        std::uint64_t hi = u32();
        std::uint64_t lo = u32();
        return (hi << 32) | lo;
    }

    std::string name() {
        const std::uint32_t len = u32();
        need(pad4(len));
        std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), len);
        pos_ += pad4(len);
        return s;
    }

    void skip(std::uint64_t n) {
        need(n);
        pos_ += n;
    }

    std::size_t pos() const { return pos_; }

private:
    void need(std::uint64_t n) const {
        if (pos_ + n > bytes_.size()) throw DataError(origin_ + ": truncated NetCDF header");
    }

    const std::vector<unsigned char>& bytes_;
    std::string origin_;
    std::size_t pos_ = 0;
};

double decode_value(const unsigned char* p, Type t) {
    switch (t) {
    case kByte: return static_cast<double>(static_cast<std::int8_t>(p[0]));
    case kChar: return static_cast<double>(p[0]);
    case kShort: {
        const auto v = static_cast<std::int16_t>((std::uint16_t{p[0]} << 8) | p[1]);
        return static_cast<double>(v);
    }
    case kInt: {
        const auto v = static_cast<std::int32_t>((std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
                                                 (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]});
        return static_cast<double>(v);
    }
    case kFloat: {
        std::uint32_t bits = (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) |
                             (std::uint32_t{p[2]} << 8) | std::uint32_t{p[3]};
        return static_cast<double>(std::bit_cast<float>(bits));
    }
    case kDouble: {
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) bits = (bits << 8) | p[i];
        return std::bit_cast<double>(bits);
    }
    }
    throw DataError("NetCDF: unknown type");
}

std::vector<Attribute> parse_attribute_list(Cursor& cur, const std::string& origin,
                                            const std::vector<unsigned char>& bytes) {
    std::vector<Attribute> attrs;
    const std::uint32_t tag = cur.u32();
    const std::uint32_t count = cur.u32();
    if (tag == 0 && count == 0) return attrs;
    if (tag != kTagAttribute) throw DataError(origin + ": malformed attribute list");
    attrs.reserve(count);
    for (std::uint32_t a = 0; a < count; ++a) {
        Attribute attr;
        attr.name = cur.name();
        attr.type = static_cast<Type>(cur.u32());
        const std::uint32_t nelems = cur.u32();
        const std::size_t elem_size = type_size(attr.type);
        const std::uint64_t payload = pad4(std::uint64_t{nelems} * elem_size);
        const std::size_t start = cur.pos();
        cur.skip(payload);
        if (attr.type == kChar) {
            attr.text.assign(reinterpret_cast<const char*>(bytes.data() + start), nelems);
        } else {
            attr.numbers.reserve(nelems);
            for (std::uint32_t i = 0; i < nelems; ++i)
                attr.numbers.push_back(decode_value(bytes.data() + start + i * elem_size, attr.type));
        }
        attrs.push_back(std::move(attr));
    }
    return attrs;
}

}  // namespace

const Attribute* Variable::attribute(const std::string& attr_name) const {
    for (const auto& a : attributes)
        if (a.name == attr_name) return &a;
    return nullptr;
}

File::File(const std::filesystem::path& path) : origin_(path.string()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + origin_ + "'");
    bytes_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());

    if (bytes_.size() >= 8 && std::memcmp(bytes_.data(), "\x89HDF", 4) == 0)
        throw DataError(origin_ + ": NetCDF-4/HDF5 container is not supported, convert to classic format");
    if (bytes_.size() < 4 || std::memcmp(bytes_.data(), "CDF", 3) != 0)
        throw DataError(origin_ + ": not a NetCDF classic file");
    version_ = bytes_[3];
    if (version_ != 1 && version_ != 2)
        throw DataError(origin_ + ": unsupported NetCDF classic version " + std::to_string(version_));

    Cursor cur(bytes_, origin_);
    cur.skip(4);  // magic
    numrecs_ = cur.u32();
    if (numrecs_ == kStreamingRecords)
        throw DataError(origin_ + ": streaming record count is not supported");

    // dimension list
    {
        const std::uint32_t tag = cur.u32();
        const std::uint32_t count = cur.u32();
        if (!(tag == 0 && count == 0)) {
            if (tag != kTagDimension) throw DataError(origin_ + ": malformed dimension list");
            dims_.reserve(count);
            for (std::uint32_t d = 0; d < count; ++d) {
                Dimension dim;
                dim.name = cur.name();
                dim.length = cur.u32();
                if (dim.length == 0) {
                    dim.is_record = true;
                    dim.length = numrecs_;
                }
                dims_.push_back(std::move(dim));
            }
        }
    }

    parse_attribute_list(cur, origin_, bytes_);  // global attributes, unused

    // variable list
    const std::uint32_t tag = cur.u32();
    const std::uint32_t count = cur.u32();
    if (tag == 0 && count == 0) return;
    if (tag != kTagVariable) throw DataError(origin_ + ": malformed variable list");
    vars_.reserve(count);
    for (std::uint32_t v = 0; v < count; ++v) {
        Variable var;
        var.name = cur.name();
        const std::uint32_t ndims = cur.u32();
        var.dim_ids.reserve(ndims);
        for (std::uint32_t d = 0; d < ndims; ++d) {
            const auto id = static_cast<std::int32_t>(cur.u32());
            if (id < 0 || static_cast<std::size_t>(id) >= dims_.size())
                throw DataError(origin_ + ": variable '" + var.name + "' references unknown dimension");
            var.dim_ids.push_back(id);
        }
        var.attributes = parse_attribute_list(cur, origin_, bytes_);
        var.type = static_cast<Type>(cur.u32());
        var.vsize = cur.u32();
        var.begin = (version_ == 1) ? cur.u32() : cur.u64();
        var.is_record = !var.dim_ids.empty() && dims_[var.dim_ids.front()].is_record;
        vars_.push_back(std::move(var));
    }
}

const Variable* File::find_variable(const std::string& name) const {
    for (const auto& v : vars_)
        if (v.name == name) return &v;
    return nullptr;
}

const Variable& File::require_variable(const std::string& name) const {
    const Variable* v = find_variable(name);
    if (!v) throw DataError(origin_ + ": missing variable '" + name + "'");
    return *v;
}

std::uint64_t File::per_record_elements(const Variable& v) const {
    std::uint64_t n = 1;
    for (std::size_t i = v.is_record ? 1 : 0; i < v.dim_ids.size(); ++i)
        n *= dims_[v.dim_ids[i]].length;
    return n;
}

std::uint64_t File::element_count(const Variable& v) const {
    std::uint64_t n = per_record_elements(v);
    if (v.is_record) n *= numrecs_;
    return n;
}

std::uint64_t File::record_stride() const {
    std::uint64_t stride = 0;
    std::size_t record_vars = 0;
    std::uint64_t single_size = 0;
    for (const auto& v : vars_) {
        if (!v.is_record) continue;
        ++record_vars;
        single_size = per_record_elements(v) * type_size(v.type);
        stride += pad4(single_size);
    }
    // a lone record variable is stored without inter-record padding
    if (record_vars == 1) return single_size;
    return stride;
}

std::vector<double> File::read_all(const Variable& v) const {
    const std::size_t elem = type_size(v.type);
    std::vector<double> out;
    out.reserve(element_count(v));
    if (!v.is_record) {
        const std::uint64_t n = element_count(v);
        if (v.begin + n * elem > bytes_.size()) throw DataError(origin_ + ": data section truncated");
        for (std::uint64_t i = 0; i < n; ++i)
            out.push_back(decode_value(bytes_.data() + v.begin + i * elem, v.type));
        return out;
    }
    const std::uint64_t per_rec = per_record_elements(v);
    const std::uint64_t stride = record_stride();
    for (std::uint32_t r = 0; r < numrecs_; ++r) {
        const std::uint64_t base = v.begin + std::uint64_t{r} * stride;
        if (base + per_rec * elem > bytes_.size()) throw DataError(origin_ + ": data section truncated");
        for (std::uint64_t i = 0; i < per_rec; ++i)
            out.push_back(decode_value(bytes_.data() + base + i * elem, v.type));
    }
    return out;
}

}  // namespace windsim::nc
