/* NavSPL product entry point. */
#include <stdio.h>
#include "nav.h"

static struct nav_context ctx;

int main(int argc, char **argv) {
  nav_context_init(&ctx);
#ifdef WITH_MAP
  map_cache_open(&ctx.map_cache, "tiles.db");
#endif
#ifdef WITH_ENGINE
  routing_engine_init(&ctx.engine, &ctx.map_cache);
#endif
#ifdef FEAT_GPS
  gps_receiver_start(&ctx.receiver, "/dev/ttyGPS0");
#endif
#ifdef FEAT_TRAFFIC
  traffic_feed_subscribe(&ctx.traffic, "tmc://local");
#endif
#if defined(DISPLAY_2D)
  display_init_flat(&ctx.display);
#else
  display_init_perspective(&ctx.display);
#endif
#ifdef FEAT_VOICE
  voice_mixer_open(&ctx.voice);
#endif

  while (nav_context_running(&ctx)) {
    nav_context_tick(&ctx);
#ifdef FEAT_GPS
    struct position pos = gps_receiver_poll(&ctx.receiver);
    route_tracker_update(&ctx.tracker, pos);
#endif
    display_render_frame(&ctx.display, &ctx.tracker);
  }
  nav_context_shutdown(&ctx);
  return 0;
}
