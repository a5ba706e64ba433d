/* Map tiles, road segments and the tile cache. */
#include "nav.h"

#ifdef WITH_MAP
/* Tiles are loaded lazily and evicted in least-recently-used order. */
void map_cache_open(struct map_cache *cache, const char *path) {
  cache->db = tile_db_open(path);
  cache->lru = lru_create(256);
  cache->segment_count = tile_db_segment_count(cache->db);
}

struct map_tile *map_tile_load(struct map_cache *cache, struct tile_key key) {
  struct map_tile *tile = lru_get(cache->lru, key);
  if (tile) return tile;
  tile = tile_db_read(cache->db, key);
  if (lru_full(cache->lru)) {
    struct map_tile *victim = lru_evict(cache->lru);
    map_tile_free(victim);
  }
  lru_put(cache->lru, key, tile);
  return tile;
}

struct road_segment *map_segment(struct map_cache *cache, struct segment_id id) {
  struct map_tile *tile = map_tile_load(cache, tile_key_of_segment(id));
  return &tile->segments[id.offset];
}

struct node_id map_nearest_node(struct map_cache *cache, struct position pos) {
  struct map_tile *tile = map_tile_load(cache, tile_key_of_position(pos));
  struct node_id best = tile->intersections[0];
  double best_distance = haversine_distance_pos(pos, best);
  for (int i = 1; i < tile->intersection_count; ++i) {
    double d = haversine_distance_pos(pos, tile->intersections[i]);
    if (d < best_distance) {
      best_distance = d;
      best = tile->intersections[i];
    }
  }
  return best;
}

// Points of interest are indexed per tile.
int map_poi_search(struct map_cache *cache, struct position pos,
                   const char *category, struct poi *results, int max_results) {
  struct map_tile *tile = map_tile_load(cache, tile_key_of_position(pos));
  int found = 0;
  for (int i = 0; i < tile->poi_count && found < max_results; ++i) {
    if (poi_matches_category(&tile->pois[i], category))
      results[found++] = tile->pois[i];
  }
  return found;
}
#endif
