#pragma once

#include <map>
#include <string>
#include <vector>

namespace satrestore {

struct Tensor {
    std::vector<int> shape;
    std::vector<double> values;

    std::size_t element_count() const noexcept;
};

/// Named tensor container stored as text:
///
///     satrestore-tensors 1
///     <name> <rank> <dim0> ... <dimN>
///     <values, whitespace separated, row-major>
///     ...
///
/// Values are written in shortest round-trip form, so write -> read is exact.
class TensorFile {
public:
    static TensorFile read(const std::string& path);
    static TensorFile parse(const std::string& text, const std::string& source = "<tensors>");

    void write(const std::string& path) const;
    std::string serialize() const;

    bool contains(const std::string& name) const { return entries_.count(name) != 0; }
    /// Throws Error when absent.
    const Tensor& at(const std::string& name) const;
    /// Throws Error when absent or when the shape differs from `shape`.
    const Tensor& expect(const std::string& name, const std::vector<int>& shape) const;
    void set(const std::string& name, Tensor tensor);

    const std::map<std::string, Tensor>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Tensor> entries_;
};

}  // namespace satrestore
