import { defineConfig } from 'vitest/config';

export default defineConfig({
  test: {
    environment: 'happy-dom',
    environmentOptions: {
      happyDOM: {
        // same origin as the service spawned by the global setup, so the
        // in-page fetch needs no CORS preflight
        url: 'http://127.0.0.1:8971',
      },
    },
    globalSetup: './tests/globalSetup.ts',
    testTimeout: 120_000,
    hookTimeout: 120_000,
    fileParallelism: false,
  },
});
