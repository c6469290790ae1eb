/// <reference types="vitest" />
import { defineConfig } from 'vite';

export default defineConfig({
  server: {
    // the studio only ever talks to the session service
    proxy: {
      '/session': {
        target: 'http://127.0.0.1:8787',
        ws: true,
      },
    },
  },
  test: {
    environment: 'node',
    include: ['test/**/*.test.ts'],
    testTimeout: 20000,
  },
});
