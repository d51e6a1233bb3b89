import { defineConfig } from 'vitest/config';

export default defineConfig({
  build: {
    outDir: 'dist',
  },
  server: {
    // `npm run dev` against a locally running `genrebar serve`
    proxy: {
      '/api': 'http://127.0.0.1:8000',
    },
  },
  test: {
    environment: 'jsdom',
  },
});
