import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    // The end-to-end suite boots the Python service once per run.
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
