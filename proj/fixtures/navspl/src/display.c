/* Display: flat 2D or perspective 3D rendering. */
#include "nav.h"

#ifdef DISPLAY_2D
void display_init_flat(struct display *display) {
  display->canvas = canvas_create(800, 480);
  display->zoom = 15;
}

// Top-down view: tiles are blitted, the route is drawn as a polyline.
void display_render_frame(struct display *display, const struct route_tracker *tracker) {
  canvas_clear(display->canvas);
  for (int i = 0; i < display->visible_tile_count; ++i)
    canvas_blit_tile(display->canvas, display->visible_tiles[i], display->zoom);
  canvas_polyline(display->canvas, tracker->route->points,
                  tracker->route->point_count, ROUTE_COLOR);
  canvas_marker(display->canvas, tracker->current, VEHICLE_MARKER);
  canvas_present(display->canvas);
}
#endif

#ifdef DISPLAY_3D
void display_init_perspective(struct display *display) {
  display->scene = scene_create();
  display->camera = camera_perspective(60.0, 800.0 / 480.0);
  scene_load_buildings(display->scene, "buildings.db");
  scene_load_terrain(display->scene, "terrain.db");
}

/* Perspective view: the camera follows the vehicle above the route. */
void display_render_frame(struct display *display, const struct route_tracker *tracker) {
  camera_follow(display->camera, tracker->current, 120.0, 35.0);
  scene_draw_terrain(display->scene, display->camera);
  scene_draw_buildings(display->scene, display->camera);
  scene_draw_route_ribbon(display->scene, tracker->route, ROUTE_COLOR);
  scene_draw_vehicle(display->scene, tracker->current);
  scene_present(display->scene);
}
#endif
