// Base layer: request handling against the warehouse and delivery planning.
#pragma once

#include <variant>

#include "mcl/frame.hpp"
#include "mcl/types.hpp"
#include "mcl/warehouse.hpp"

namespace mcl::server {

struct DeliveryPlan {
    ContentItem item;
    uint32_t chunk_size = 4096;
    std::optional<ModificationSpec> mod_spec;
};

// High -> 8192, Medium -> 4096, Low -> 1024.
uint32_t choose_chunk_size(const NetworkStatus& net);

// Looks the url up and builds a plan, or a wire-ready error.
std::variant<DeliveryPlan, ErrorInfo> handle_request(const ContentRequest& req,
                                                     const Warehouse& w);

}  // namespace mcl::server
