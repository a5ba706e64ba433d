/* Routing engine: A-star search over the road graph. */
#include "nav.h"

#ifdef WITH_ENGINE
// Route cost blends segment distance with expected travel time.
static double segment_cost(const struct road_segment *segment) {
  double travel_time = segment->length_m / segment->speed_mps;
  return 0.3 * segment->length_m + 0.7 * travel_time;
}

void routing_engine_init(struct routing_engine *engine, struct map_cache *cache) {
  engine->cache = cache;
  engine->open_set = heap_create(1024);
  engine->closed_set = bitset_create(cache->segment_count);
}

struct route routing_engine_route(struct routing_engine *engine,
                                  struct node_id origin,
                                  struct node_id destination) {
  struct route route = route_empty();
  heap_push(engine->open_set, origin, 0.0);
  while (!heap_empty(engine->open_set)) {
    struct node_id node = heap_pop(engine->open_set);
    if (node_equal(node, destination)) {
      route = route_reconstruct(engine, destination);
      break;
    }
    bitset_set(engine->closed_set, node.index);
    for (int i = 0; i < node_degree(engine->cache, node); ++i) {
      const struct road_segment *segment = node_segment(engine->cache, node, i);
      if (bitset_test(engine->closed_set, segment->target.index)) continue;
      double cost = route_cost_to(engine, node) + segment_cost(segment);
      double heuristic = haversine_distance(segment->target, destination);
      heap_push(engine->open_set, segment->target, cost + heuristic);
    }
  }
  return route;
}

#ifdef FEAT_TRAFFIC
// Congested segments are penalised before routing.
void routing_engine_apply_incidents(struct routing_engine *engine,
                                    const struct incident_list *incidents) {
  for (int i = 0; i < incidents->count; ++i) {
    struct road_segment *segment = map_segment(engine->cache, incidents->items[i].segment);
    segment->speed_mps *= incidents->items[i].speed_factor;
  }
}
#endif

void routing_engine_reroute(struct routing_engine *engine, struct route *route,
                            struct position current) {
  struct node_id nearest = map_nearest_node(engine->cache, current);
  *route = routing_engine_route(engine, nearest, route->destination);
}
#endif
