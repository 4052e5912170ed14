import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    include: ["test/**/*.test.ts"],
    testTimeout: 120_000,
    hookTimeout: 120_000,
    // each test file that needs the cost service spawns its own instance,
    // so keep files sequential to avoid port churn
    fileParallelism: false,
  },
});
