// Document object model, the content sink interface, and canonical
// serialization.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mcl/types.hpp"

namespace mcl::parse {

struct DomNode {
    enum class Kind : uint8_t { Element, Text };
    Kind kind = Kind::Element;
    std::string name;                          // Element
    std::map<std::string, std::string> attrs;  // Element; sorted by key
    std::vector<DomNode> children;             // Element
    Bytes text;                                // Text

    bool operator==(const DomNode&) const = default;
    size_t node_count() const;
};

// Event interface the parser drives during token iteration. Sinks must not
// call back into the parser.
class ContentSink {
public:
    virtual ~ContentSink() = default;
    virtual void open_element(const std::string& name,
                              const std::map<std::string, std::string>& attrs) = 0;
    virtual void text(const Bytes& data) = 0;
    virtual void close_element(const std::string& name) = 0;
};

// Sink that assembles a DomNode tree.
class DomBuilderSink : public ContentSink {
public:
    void open_element(const std::string& name,
                      const std::map<std::string, std::string>& attrs) override;
    void text(const Bytes& data) override;
    void close_element(const std::string& name) override;

    bool has_root() const { return root_ != nullptr && stack_.empty(); }
    const DomNode& root() const { return *root_; }
    DomNode take_root() { return std::move(*root_); }

private:
    std::unique_ptr<DomNode> root_;
    std::vector<DomNode*> stack_;
};

// Attributes sorted by name, no insignificant whitespace, <e/> for empty
// elements. Attribute values are emitted verbatim (MCLML has no entities).
std::string serialize_canonical(const DomNode& root);

}  // namespace mcl::parse
