#include "mcl/dom.hpp"

#include <stdexcept>

namespace mcl::parse {

size_t DomNode::node_count() const {
    size_t n = 1;
    for (const DomNode& c : children) n += c.node_count();
    return n;
}

void DomBuilderSink::open_element(const std::string& name,
                                  const std::map<std::string, std::string>& attrs) {
    DomNode node;
    node.kind = DomNode::Kind::Element;
    node.name = name;
    node.attrs = attrs;
    if (stack_.empty()) {
        root_ = std::make_unique<DomNode>(std::move(node));
        stack_.push_back(root_.get());
    } else {
        stack_.back()->children.push_back(std::move(node));
        stack_.push_back(&stack_.back()->children.back());
    }
}

void DomBuilderSink::text(const Bytes& data) {
    if (stack_.empty()) throw std::logic_error("text outside root element");
    DomNode node;
    node.kind = DomNode::Kind::Text;
    node.text = data;
    stack_.back()->children.push_back(std::move(node));
}

void DomBuilderSink::close_element(const std::string&) {
    if (stack_.empty()) throw std::logic_error("close without open");
    stack_.pop_back();
}

namespace {

void serialize(const DomNode& n, std::string& out) {
    if (n.kind == DomNode::Kind::Text) {
        out.append(n.text.begin(), n.text.end());
        return;
    }
    out += '<';
    out += n.name;
    for (const auto& [k, v] : n.attrs) {
        out += ' ';
        out += k;
        out += "=\"";
        out += v;
        out += '"';
    }
    if (n.children.empty()) {
        out += "/>";
        return;
    }
    out += '>';
    for (const DomNode& c : n.children) serialize(c, out);
    out += "</";
    out += n.name;
    out += '>';
}

}  // namespace

std::string serialize_canonical(const DomNode& root) {
    std::string out;
    serialize(root, out);
    return out;
}

}  // namespace mcl::parse
