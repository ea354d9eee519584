import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    testTimeout: 120000,
    hookTimeout: 120000,
    // each file boots its own service instance; keep them sequential to
    // avoid extraction jobs competing for CPU in CI containers
    fileParallelism: false,
  },
});
