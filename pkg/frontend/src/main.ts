import { ApiClient } from './api';
import { createApp } from './app';

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get('api') ?? 'http://127.0.0.1:8765';

const root = document.getElementById('app');
if (root) {
  createApp(root, new ApiClient(baseUrl, window.fetch.bind(window)));
}
